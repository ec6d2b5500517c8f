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

#ifndef CVBOSON_TOOLS_CLI_HPP
#define CVBOSON_TOOLS_CLI_HPP

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cvboson/distribution.hpp"
#include "cvboson/estimate.hpp"
#include "cvboson/fock.hpp"
#include "cvboson/io.hpp"
#include "cvboson/povm.hpp"
#include "cvboson/sampler.hpp"
#include "cvboson/verify.hpp"

namespace cvboson::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitGuard = 2;
inline constexpr int kExitInvariant = 3;

namespace detail {

struct Options {
    unsigned threads = 1;
    // gen-unitary
    int modes = 0;
    std::uint64_t seed = 0;
    // shared input
    std::string unitary_path;
    int photons = 0;
    std::optional<double> t;
    std::optional<int> bits;
    std::string out;
    // sample
    std::string detector = "dprcv1";
    std::size_t shots = 1000;
    int radial_cells = 512;
    int angular_cells = 256;
    // sweep-t
    std::vector<double> t_list;
    double t_min = 1e-4;
    double t_max = 1e-2;
    int points = 9;
    std::string report;
    std::optional<double> report_t;
    std::size_t report_shots = 100000;
    std::optional<double> lower_bound;
    double mult_factor = 2.0;
    // detector-curves
    int curve_points = 301;
    double curve_t_max = 3.0;
    // verify
    std::string level = "quick";
};

inline std::string quote_arg(const std::string &a) {
    if (!a.empty() && a.find_first_of(" \t\"'\\$") == std::string::npos) {
        return a;
    }
    std::string s = "'";
    for (char c : a) {
        s += c == '\'' ? std::string("'\\''") : std::string(1, c);
    }
    return s + "'";
}

/// '#'-prefixed metadata lines written ahead of every CSV header row.
inline std::string preamble(const std::vector<std::string> &args, const std::vector<std::pair<std::string, std::string>> &fields) {
    std::string s = "# cvboson " + std::string(kVersion) + "\n# command:";
    for (const auto &a : args) {
        s += " " + quote_arg(a);
    }
    s += "\n";
    for (const auto &[k, v] : fields) {
        s += "# " + k + ": " + v + "\n";
    }
    return s;
}

inline void emit(const std::string &path, const std::string &content, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << content;
        out.flush();
    } else {
        write_file_atomic(path, content);
    }
}

inline DetectorConfig detector_from(const Options &o) {
    if (o.t && o.bits) {
        throw InvalidArgument("give either --t or --bits, not both");
    }
    if (o.bits) {
        return DetectorConfig::with_bits(*o.bits);
    }
    if (!o.t) {
        throw InvalidArgument("a click threshold is required (--t or --bits)");
    }
    return DetectorConfig::with_threshold(*o.t);
}

inline std::vector<std::pair<std::string, std::string>> detector_fields(const DetectorConfig &d) {
    std::vector<std::pair<std::string, std::string>> f{{"detector", "dprcv1"},
                                                        {"ancilla_n", std::to_string(d.ancilla_n)},
                                                        {"t", format_double(d.threshold_t)}};
    if (d.bits_b) {
        f.emplace_back("bits", std::to_string(*d.bits_b));
    }
    return f;
}

inline int cmd_gen_unitary(const Options &o, const std::vector<std::string> &, std::ostream &out) {
    emit(o.out, unitary_to_json(haar_unitary(o.modes, o.seed)), out);
    return kExitOk;
}

inline int cmd_exact_dist(const Options &o, const std::vector<std::string> &args, std::ostream &out) {
    const UnitaryMatrix u = read_unitary(o.unitary_path);
    const DetectorConfig det = detector_from(o);
    const DistributionTable table = dprcv_table(u, o.photons, det, o.threads);
    auto fields = detector_fields(det);
    fields.emplace_back("modes", std::to_string(table.modes));
    fields.emplace_back("photons", std::to_string(table.photons));
    fields.emplace_back("normalization_residual", format_double(table.normalization_residual));
    emit(o.out, distribution_csv(table, preamble(args, fields)), out);
    return kExitOk;
}

inline int cmd_sample(const Options &o, const std::vector<std::string> &args, std::ostream &out) {
    const UnitaryMatrix u = read_unitary(o.unitary_path);
    std::vector<std::pair<std::string, std::string>> fields;
    auto head = [&](const std::string &kind) {
        fields.insert(fields.begin(), {"detector", kind});
        fields.emplace_back("seed", std::to_string(o.seed));
        fields.emplace_back("shots", std::to_string(o.shots));
        fields.emplace_back("modes", std::to_string(u.modes()));
        fields.emplace_back("photons", std::to_string(o.photons));
        return preamble(args, fields);
    };
    if (o.detector == "fock") {
        emit(o.out, samples_csv(sample_fock(u, o.photons, o.shots, o.seed, o.threads), head("fock")), out);
    } else if (o.detector == "dprcv1") {
        const DetectorConfig det = detector_from(o);
        const auto table = dprcv_table(u, o.photons, det, o.threads);
        fields = detector_fields(det);
        fields.erase(fields.begin());
        emit(o.out, samples_csv(sample_dprcv1(table, o.shots, o.seed, o.threads), head("dprcv1")), out);
    } else if (o.detector == "prcv1") {
        emit(o.out, samples_csv(sample_prcv1(u, o.photons, o.shots, o.seed, o.threads), head("prcv1")), out);
    } else if (o.detector == "cv1") {
        fields.emplace_back("radial_cells", std::to_string(o.radial_cells));
        fields.emplace_back("angular_cells", std::to_string(o.angular_cells));
        emit(o.out,
             samples_csv(sample_cv1(u, o.photons, o.shots, o.seed, o.radial_cells, o.angular_cells, o.threads),
                         head("cv1")),
             out);
    } else {
        throw InvalidArgument("unknown detector '" + o.detector + "' (fock, dprcv1, prcv1, cv1)");
    }
    return kExitOk;
}

inline int cmd_sweep_t(const Options &o, const std::vector<std::string> &args, std::ostream &out) {
    const UnitaryMatrix u = read_unitary(o.unitary_path);
    std::vector<double> grid = o.t_list;
    if (grid.empty()) {
        if (o.points < 2 || !(o.t_min > 0.0) || !(o.t_max > o.t_min)) {
            throw InvalidArgument("sweep grid needs --points >= 2 and 0 < --t-min < --t-max");
        }
        for (int i = 0; i < o.points; ++i) {
            grid.push_back(o.t_min * std::pow(o.t_max / o.t_min, static_cast<double>(i) / (o.points - 1)));
        }
    }
    const OutputState state = output_state(u, o.photons, o.threads);
    const SweepFit fit = deviation_sweep(state, grid);
    std::vector<std::pair<std::string, std::string>> fields{
        {"detector", "dprcv1"},
        {"modes", std::to_string(u.modes())},
        {"photons", std::to_string(o.photons)},
        {"perm_sq", format_double(fit.perm_sq)},
        {"linear_coeff", format_double(fit.linear_coeff)},
        {"quadratic_coeff", format_double(fit.quadratic_coeff)},
        {"quadratic_bound", format_double(fit.quadratic_bound)},
        {"condition_number", format_double(fit.condition_number)},
        {"degenerate", fit.degenerate ? "true" : "false"}};
    if (!o.report.empty()) {
        fields.emplace_back("seed", std::to_string(o.seed));
    }
    emit(o.out, sweep_csv(fit, preamble(args, fields)), out);
    if (!o.report.empty()) {
        const double t = o.report_t.value_or(*std::min_element(grid.begin(), grid.end()));
        const auto table = dprcv_table(state, DetectorConfig::with_threshold(t), o.threads);
        const auto batch = sample_dprcv1(table, o.report_shots, o.seed, o.threads);
        const PermEstimate est = estimate_perm_from_samples(batch, t, o.photons);
        const double L = o.lower_bound.value_or(fit.perm_sq);
        const EstimateReport rep = make_estimate_report(state, t, est.p_tilde, L, o.mult_factor);
        emit(o.report, to_json(rep).dump(2) + "\n", out);
    }
    return kExitOk;
}

inline int cmd_detector_curves(const Options &o, const std::vector<std::string> &args, std::ostream &out) {
    if (o.curve_points < 2 || !(o.curve_t_max > 0.0)) {
        throw InvalidArgument("detector-curves needs --points >= 2 and --t-max > 0");
    }
    std::vector<double> grid;
    for (int i = 0; i < o.curve_points; ++i) {
        grid.push_back(o.curve_t_max * i / (o.curve_points - 1));
    }
    emit(o.out, detector_curves_csv(detector_curves(grid), preamble(args, {{"detector", "prcv1"}})), out);
    return kExitOk;
}

inline int cmd_verify(const Options &o, std::ostream &out) {
    const auto level = o.level == "full" ? verify::Level::full : verify::Level::quick;
    const auto results = verify::run_acceptance(level, &out);
    int failed = 0;
    for (const auto &r : results) {
        failed += r.passed ? 0 : 1;
    }
    out << (failed ? std::to_string(failed) + " check(s) failed\n" : std::string("all checks passed\n"));
    return failed ? kExitInvariant : kExitOk;
}

}  // namespace detail

/// Entry point of the `cvboson` tool; returns the process exit status.
inline int run(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr) {
    std::vector<std::string> args(argv, argv + argc);
    if (!args.empty()) {
        args.front() = "cvboson";
    }
    detail::Options o;
    CLI::App app{"Continuous-variable BosonSampling toolkit", "cvboson"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--threads", o.threads, "worker threads (results do not depend on it)")
        ->check(CLI::Range(1u, 256u));

    auto add_seed = [&](CLI::App *sub) {
        sub->add_option("--seed", o.seed, "RNG seed")->envname("CVBOSON_SEED");
    };
    auto add_detector = [&](CLI::App *sub) {
        sub->add_option("--t", o.t, "click threshold t > 0");
        sub->add_option("--bits", o.bits, "b-bit discretization, t = 2/(2^b - 1)");
    };
    auto add_input = [&](CLI::App *sub) {
        sub->add_option("--unitary", o.unitary_path, "unitary JSON file")->required();
        sub->add_option("--photons", o.photons, "photon number N")->required();
    };

    auto *gen = app.add_subcommand("gen-unitary", "write a Haar-random unitary as JSON");
    gen->add_option("--modes", o.modes, "number of modes")->required()->check(CLI::Range(1, 4096));
    add_seed(gen);
    gen->add_option("--out", o.out, "output path (stdout if omitted)");

    auto *exact = app.add_subcommand("exact-dist", "exact DPRCV-1 click-pattern distribution");
    add_input(exact);
    add_detector(exact);
    exact->add_option("--out", o.out, "output CSV");

    auto *sample = app.add_subcommand("sample", "draw measurement outcomes");
    add_input(sample);
    sample->add_option("--detector", o.detector, "fock, dprcv1, prcv1 or cv1");
    add_detector(sample);
    sample->add_option("--shots", o.shots, "number of shots");
    add_seed(sample);
    sample->add_option("--radial-cells", o.radial_cells, "CV-1 radial grid cells");
    sample->add_option("--angular-cells", o.angular_cells, "CV-1 angular grid cells");
    sample->add_option("--out", o.out, "output CSV");

    auto *sweep = app.add_subcommand("sweep-t", "small-t deviation of P_D(1_N)/t^N from |Per|^2");
    add_input(sweep);
    sweep->add_option("--t-list", o.t_list, "explicit t values")->delimiter(',');
    sweep->add_option("--t-min", o.t_min, "smallest t of the log grid");
    sweep->add_option("--t-max", o.t_max, "largest t of the log grid");
    sweep->add_option("--points", o.points, "log grid points");
    sweep->add_option("--out", o.out, "output CSV");
    sweep->add_option("--report", o.report, "also write an estimate report JSON");
    sweep->add_option("--report-t", o.report_t, "threshold for the report (default: smallest t)");
    sweep->add_option("--report-shots", o.report_shots, "DPRCV-1 shots behind the estimate");
    sweep->add_option("--lower-bound", o.lower_bound, "L (default: the exact |Per|^2)");
    sweep->add_option("--mult-factor", o.mult_factor, "g > 1");
    add_seed(sweep);

    auto *curves = app.add_subcommand("detector-curves", "efficiency and dark-count curves");
    curves->add_option("--t-max", o.curve_t_max, "largest t");
    curves->add_option("--points", o.curve_points, "grid points including t = 0");
    curves->add_option("--out", o.out, "output CSV");

    auto *ver = app.add_subcommand("verify", "run the invariant suite");
    ver->add_option("--level", o.level, "quick or full")->check(CLI::IsMember({"quick", "full"}));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
        app.parse(rev);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion &e) {
        out << kVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "cvboson: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*gen) return detail::cmd_gen_unitary(o, args, out);
        if (*exact) return detail::cmd_exact_dist(o, args, out);
        if (*sample) return detail::cmd_sample(o, args, out);
        if (*sweep) return detail::cmd_sweep_t(o, args, out);
        if (*curves) return detail::cmd_detector_curves(o, args, out);
        if (*ver) return detail::cmd_verify(o, out);
    } catch (const GuardError &e) {
        err << "cvboson: guard: " << e.what() << "\n";
        return kExitGuard;
    } catch (const NumericalError &e) {
        err << "cvboson: invariant: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const Error &e) {
        err << "cvboson: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "cvboson: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace cvboson::cli

#endif
