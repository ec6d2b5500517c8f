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

#ifndef CVBOSON_IO_HPP
#define CVBOSON_IO_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cvboson/common.hpp"
#include "cvboson/distribution.hpp"
#include "cvboson/estimate.hpp"
#include "cvboson/fock.hpp"
#include "cvboson/povm.hpp"
#include "cvboson/sampler.hpp"

namespace cvboson {

/// Input file that cannot be read or does not follow its schema.
class ParseError : public Error {
   public:
    using Error::Error;
};

/// 17 significant digits; enough to round-trip any double.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string unitary_to_json(const UnitaryMatrix &u) {
    const int m = u.modes();
    nlohmann::ordered_json j;
    j["modes"] = m;
    auto re = nlohmann::json::array(), im = nlohmann::json::array();
    for (int r = 0; r < m; ++r) {
        nlohmann::json row_re = nlohmann::json::array(), row_im = nlohmann::json::array();
        for (int c = 0; c < m; ++c) {
            row_re.push_back(u(r, c).real());
            row_im.push_back(u(r, c).imag());
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j.dump() + "\n";
}

/// Accepts "re"/"im" either as M rows of M numbers or as one flat row-major
/// array of M*M numbers.
inline UnitaryMatrix unitary_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("unitary JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("modes") || !j.contains("re") || !j.contains("im")) {
        throw ParseError("unitary JSON: expected an object with modes, re and im");
    }
    if (!j["modes"].is_number_integer() || j["modes"].get<int>() < 1) {
        throw ParseError("unitary JSON: modes must be a positive integer");
    }
    const int m = j["modes"].get<int>();
    auto flatten = [&](const nlohmann::json &a, const char *name) {
        std::vector<double> out;
        if (!a.is_array()) {
            throw ParseError(std::string("unitary JSON: ") + name + " must be an array");
        }
        for (const auto &row : a) {
            if (row.is_array()) {
                if (static_cast<int>(row.size()) != m) {
                    throw ParseError(std::string("unitary JSON: ") + name + " row has wrong length");
                }
                for (const auto &v : row) {
                    out.push_back(v.get<double>());
                }
            } else if (row.is_number()) {
                out.push_back(row.get<double>());
            } else {
                throw ParseError(std::string("unitary JSON: ") + name + " holds a non-number");
            }
        }
        if (static_cast<int>(out.size()) != m * m) {
            throw ParseError(std::string("unitary JSON: ") + name + " must hold modes^2 entries");
        }
        return out;
    };
    const auto re = flatten(j["re"], "re");
    const auto im = flatten(j["im"], "im");
    ComplexMatrix mat(m, m);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            mat(r, c) = Complex(re[r * m + c], im[r * m + c]);
        }
    }
    try {
        return UnitaryMatrix(mat);
    } catch (const InvalidArgument &e) {
        throw ParseError(std::string("unitary JSON: ") + e.what());
    }
}

inline std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline UnitaryMatrix read_unitary(const std::filesystem::path &path) {
    return unitary_from_json(read_file(path));
}

/// Writes `content` to a sibling temporary file and renames it over `path`.
inline void write_file_atomic(const std::filesystem::path &path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw Error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

inline std::string detector_curves_csv(std::span<const DetectorCurvePoint> points, std::string_view preamble = {}) {
    std::string s(preamble);
    s += "t,eta,p_dark\n";
    for (const auto &p : points) {
        s += format_double(p.t) + "," + format_double(p.eta) + "," + format_double(p.p_dark) + "\n";
    }
    return s;
}

inline std::string distribution_csv(const DistributionTable &table, std::string_view preamble = {}) {
    std::string s(preamble);
    s += "pattern,probability\n";
    for (std::size_t i = 0; i < table.patterns.size(); ++i) {
        s += to_string(table.patterns[i]) + "," + format_double(table.probabilities[i]) + "\n";
    }
    return s;
}

inline std::string sweep_csv(const SweepFit &fit, std::string_view preamble = {}) {
    std::string s(preamble);
    s += "t,p_exact,p_over_tN,delta\n";
    for (std::size_t i = 0; i < fit.t_values.size(); ++i) {
        s += format_double(fit.t_values[i]) + "," + format_double(fit.p_exact[i]) + "," +
             format_double(fit.p_over_tN[i]) + "," + format_double(fit.deviations[i]) + "\n";
    }
    return s;
}

namespace detail {

inline std::string outcome_field(const ClickPattern &m) { return to_string(m); }

inline std::string outcome_field(const std::vector<double> &R) {
    std::string s = "\"";
    for (std::size_t i = 0; i < R.size(); ++i) {
        s += (i ? "," : "") + format_double(R[i]);
    }
    return s + "\"";
}

inline std::string outcome_field(const std::vector<Complex> &alphas) {
    std::string s = "\"";
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        s += (i ? "," : "") + format_double(alphas[i].real()) + "," + format_double(alphas[i].imag());
    }
    return s + "\"";
}

inline std::string fock_field(const FockPattern &n) {
    std::string s = "\"";
    for (std::size_t i = 0; i < n.size(); ++i) {
        s += (i ? "," : "") + std::to_string(n[i]);
    }
    return s + "\"";
}

}  // namespace detail

/// Samples CSV: `shot,outcome`. Multi-valued outcomes are one quoted,
/// comma-joined field (CV-1 as re,im pairs per mode).
template <typename Outcome>
std::string samples_csv(const SampleBatch<Outcome> &batch, std::string_view preamble = {}) {
    std::string s(preamble);
    s += "shot,outcome\n";
    for (std::size_t i = 0; i < batch.outcomes.size(); ++i) {
        s += std::to_string(i) + ",";
        if constexpr (std::is_same_v<Outcome, FockPattern>) {
            s += batch.kind == DetectorKind::fock ? detail::fock_field(batch.outcomes[i])
                                                  : detail::outcome_field(batch.outcomes[i]);
        } else {
            s += detail::outcome_field(batch.outcomes[i]);
        }
        s += "\n";
    }
    return s;
}

inline nlohmann::ordered_json to_json(const EstimateReport &r) {
    nlohmann::ordered_json j;
    j["perm_sq_true"] = r.perm_sq_true;
    j["perm_sq_estimate"] = r.perm_sq_estimate;
    j["error_term_E"] = r.error_term_E;
    j["lower_bound_L"] = r.lower_bound_L;
    j["mult_factor_g"] = r.mult_factor_g;
    if (std::isfinite(r.effective_factor_g_prime)) {
        j["effective_factor_g_prime"] = r.effective_factor_g_prime;
    } else {
        j["effective_factor_g_prime"] = nullptr;
    }
    return j;
}

}  // namespace cvboson

#endif
