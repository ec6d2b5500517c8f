// Copyright 2026 The cvboson Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "cli.hpp"
#include "cvboson/io.hpp"

using namespace cvboson;
namespace fs = std::filesystem;

namespace {

struct Invocation {
    int status;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "cvboson");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("cvboson_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::vector<std::string> data_lines(const std::string &csv) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') {
            out.push_back(line);
        }
    }
    return out;
}

}  // namespace

TEST(UnitaryJson, RoundTripIsBitExact) {
    for (int m : {1, 3, 9}) {
        const auto u = haar_unitary(m, 100 + m);
        const auto v = unitary_from_json(unitary_to_json(u));
        EXPECT_TRUE(u.matrix() == v.matrix()) << m;
    }
}

TEST(UnitaryJson, AcceptsFlatArraysAndRejectsBadInput) {
    const auto u = unitary_from_json(R"({"modes":2,"re":[1,0,0,1],"im":[0,0,0,0]})");
    EXPECT_EQ(u(1, 1), Complex(1.0));
    EXPECT_THROW(unitary_from_json("{"), ParseError);
    EXPECT_THROW(unitary_from_json(R"({"modes":2,"re":[1,0,0],"im":[0,0,0,0]})"), ParseError);
    EXPECT_THROW(unitary_from_json(R"({"modes":2,"re":[1,1,0,1],"im":[0,0,0,0]})"), ParseError);
}

TEST(Format, SeventeenDigits) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST_F(CliTest, GenUnitaryIsByteIdentical) {
    ASSERT_EQ(invoke({"gen-unitary", "--modes", "4", "--seed", "7", "--out", path("a.json")}).status, 0);
    ASSERT_EQ(invoke({"gen-unitary", "--modes", "4", "--seed", "7", "--out", path("b.json")}).status, 0);
    EXPECT_EQ(read_file(path("a.json")), read_file(path("b.json")));
    EXPECT_TRUE(read_unitary(path("a.json")).matrix() == haar_unitary(4, 7).matrix());
    EXPECT_FALSE(fs::exists(path("a.json.tmp")));
}

TEST_F(CliTest, SeedFromEnvironment) {
    ::setenv("CVBOSON_SEED", "7", 1);
    const auto r = invoke({"gen-unitary", "--modes", "3"});
    ::unsetenv("CVBOSON_SEED");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out, unitary_to_json(haar_unitary(3, 7)));
}

TEST_F(CliTest, ExactDistSumsToOne) {
    ASSERT_EQ(invoke({"gen-unitary", "--modes", "4", "--seed", "7", "--out", path("u.json")}).status, 0);
    const auto r = invoke({"exact-dist", "--unitary", path("u.json"), "--photons", "2", "--t", "0.01"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto lines = data_lines(r.out);
    ASSERT_EQ(lines.front(), "pattern,probability");
    ASSERT_EQ(lines.size(), 17u);
    double sum = 0.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        sum += std::stod(lines[i].substr(lines[i].find(',') + 1));
    }
    EXPECT_NEAR(sum, 1.0, 1e-10);
    EXPECT_EQ(lines[1].substr(0, 5), "0000,");
    EXPECT_NE(r.out.find("# t: 0.01"), std::string::npos);
    EXPECT_NE(r.out.find("# cvboson " + std::string(kVersion)), std::string::npos);
}

TEST_F(CliTest, SampleRerunFromHeaderReproduces) {
    ASSERT_EQ(invoke({"gen-unitary", "--modes", "3", "--seed", "1", "--out", path("u.json")}).status, 0);
    const auto first = invoke({"sample", "--unitary", path("u.json"), "--photons", "2", "--detector", "dprcv1",
                               "--bits", "3", "--shots", "200", "--seed", "11", "--threads", "2"});
    ASSERT_EQ(first.status, 0) << first.err;
    EXPECT_NE(first.out.find("# seed: 11"), std::string::npos);
    EXPECT_NE(first.out.find("# detector: dprcv1"), std::string::npos);
    EXPECT_NE(first.out.find("# bits: 3"), std::string::npos);
    const auto lines = data_lines(first.out);
    EXPECT_EQ(lines.front(), "shot,outcome");
    EXPECT_EQ(lines.size(), 201u);

    // Re-run the command recorded in the header (single-quoted tokens only).
    const std::string tag = "# command: ";
    const auto pos = first.out.find(tag);
    ASSERT_NE(pos, std::string::npos);
    std::istringstream cmd(first.out.substr(pos + tag.size(), first.out.find('\n', pos) - pos - tag.size()));
    std::vector<std::string> args;
    std::string tok;
    cmd >> tok;
    while (cmd >> tok) {
        args.push_back(tok);
    }
    const auto again = invoke(args);
    EXPECT_EQ(again.out, first.out);
}

TEST_F(CliTest, SampleAllDetectors) {
    ASSERT_EQ(invoke({"gen-unitary", "--modes", "2", "--seed", "3", "--out", path("u.json")}).status, 0);
    for (std::string det : {"fock", "prcv1", "cv1"}) {
        const auto r = invoke({"sample", "--unitary", path("u.json"), "--photons", "1", "--detector", det,
                               "--shots", "20", "--seed", "2", "--radial-cells", "32", "--angular-cells", "16",
                               "--out", path(det + ".csv")});
        ASSERT_EQ(r.status, 0) << det << ": " << r.err;
        const auto lines = data_lines(read_file(path(det + ".csv")));
        EXPECT_EQ(lines.size(), 21u) << det;
        const std::size_t commas = std::count(lines[1].begin(), lines[1].end(), ',');
        EXPECT_EQ(commas, det == "cv1" ? 4u : 2u) << det;
    }
}

TEST_F(CliTest, SweepAndReport) {
    ASSERT_EQ(invoke({"gen-unitary", "--modes", "4", "--seed", "5", "--out", path("u.json")}).status, 0);
    const auto r = invoke({"sweep-t", "--unitary", path("u.json"), "--photons", "2", "--points", "5", "--report",
                           path("rep.json"), "--report-shots", "2000", "--report-t", "0.05", "--seed", "9",
                           "--out", path("sweep.csv")});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto lines = data_lines(read_file(path("sweep.csv")));
    EXPECT_EQ(lines.front(), "t,p_exact,p_over_tN,delta");
    EXPECT_EQ(lines.size(), 6u);
    const auto rep = nlohmann::json::parse(read_file(path("rep.json")));
    EXPECT_TRUE(rep.contains("effective_factor_g_prime"));
    EXPECT_EQ(rep["mult_factor_g"].get<double>(), 2.0);
}

TEST_F(CliTest, DetectorCurves) {
    const auto r = invoke({"detector-curves", "--points", "31"});
    ASSERT_EQ(r.status, 0);
    const auto lines = data_lines(r.out);
    EXPECT_EQ(lines.front(), "t,eta,p_dark");
    EXPECT_EQ(lines.size(), 32u);
    EXPECT_EQ(lines[1], "0,0,0");
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(invoke({}).status, cli::kExitUsage);
    EXPECT_EQ(invoke({"bogus"}).status, cli::kExitUsage);
    EXPECT_EQ(invoke({"gen-unitary", "-m", "3"}).status, cli::kExitUsage);
    EXPECT_EQ(invoke({"exact-dist", "--unitary", path("missing.json"), "--photons", "1", "--t", "0.1"}).status,
              cli::kExitUsage);
    ASSERT_EQ(invoke({"gen-unitary", "--modes", "13", "--seed", "1", "--out", path("big.json")}).status, 0);
    EXPECT_EQ(invoke({"exact-dist", "--unitary", path("big.json"), "--photons", "2", "--t", "0.1"}).status,
              cli::kExitGuard);
    ASSERT_EQ(invoke({"gen-unitary", "--modes", "5", "--seed", "1", "--out", path("u5.json")}).status, 0);
    EXPECT_EQ(invoke({"sample", "--unitary", path("u5.json"), "--photons", "1", "--detector", "cv1"}).status,
              cli::kExitGuard);
    EXPECT_EQ(invoke({"exact-dist", "--unitary", path("u5.json"), "--photons", "1"}).status, cli::kExitUsage);
    EXPECT_EQ(invoke({"--version"}).status, 0);
}
