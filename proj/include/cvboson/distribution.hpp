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

#ifndef CVBOSON_DISTRIBUTION_HPP
#define CVBOSON_DISTRIBUTION_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>

#include "cvboson/common.hpp"
#include "cvboson/fock.hpp"
#include "cvboson/permanent.hpp"
#include "cvboson/povm.hpp"

namespace cvboson {

inline constexpr int kMaxTableModes = 12;
inline constexpr int kMaxTablePhotons = 4;
inline constexpr int kMaxDensityModes = 10;

/// Binary DPRCV-1 outcome per mode: 1 = R in [0, t], 0 = R in (t, inf).
using ClickPattern = std::vector<int>;

inline void validate_click_pattern(std::span<const int> m, int modes) {
    if (static_cast<int>(m.size()) != modes) {
        throw InvalidPattern("click pattern has " + std::to_string(m.size()) + " entries, expected " +
                             std::to_string(modes));
    }
    for (int v : m) {
        if (v != 0 && v != 1) {
            throw InvalidPattern("click pattern entries must be 0 or 1");
        }
    }
}

inline std::string to_string(std::span<const int> click_pattern) {
    std::string s;
    s.reserve(click_pattern.size());
    for (int v : click_pattern) {
        s.push_back(v ? '1' : '0');
    }
    return s;
}

inline ClickPattern parse_click_pattern(std::string_view s) {
    ClickPattern m;
    for (char c : s) {
        if (c != '0' && c != '1') {
            throw InvalidPattern("click pattern string must contain only 0 and 1");
        }
        m.push_back(c - '0');
    }
    return m;
}

/// Click pattern number `index` in ascending string order ("00..0" first);
/// mode 0 is the most significant bit.
inline ClickPattern click_pattern_at(std::uint64_t index, int modes) {
    ClickPattern m(modes);
    for (int j = 0; j < modes; ++j) {
        m[j] = static_cast<int>(index >> (modes - 1 - j) & 1u);
    }
    return m;
}

/// U_LON |1_N> expanded over all N-photon output patterns.
struct OutputState {
    int modes = 0;
    int photons = 0;
    std::vector<FockPattern> patterns;
    std::vector<Complex> amplitudes;

    std::vector<double> probabilities() const {
        std::vector<double> p(amplitudes.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            p[i] = std::norm(amplitudes[i]);
        }
        return p;
    }
};

inline void check_table_guard(int modes, int photons) {
    if (photons < 0 || photons > modes) {
        throw InvalidArgument("photon number must lie in [0, modes]");
    }
    if (modes > kMaxTableModes || photons > kMaxTablePhotons) {
        throw GuardError("exact enumeration limited to M <= " + std::to_string(kMaxTableModes) +
                         ", N <= " + std::to_string(kMaxTablePhotons));
    }
}

inline OutputState output_state(const UnitaryMatrix &u, int photons, unsigned threads = 1) {
    check_table_guard(u.modes(), photons);
    OutputState s{u.modes(), photons, enumerate_fock_patterns(u.modes(), photons), {}};
    s.amplitudes.resize(s.patterns.size());
    parallel_for(s.patterns.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            s.amplitudes[i] = fock_amplitude(u, s.patterns[i], photons);
        }
    });
    return s;
}

/// Joint CV-1 density P(alpha) = (2 pi)^{-M} |sum_n <n|U|1_N> prod_j <1|D^dagger(alpha_j)|n_j>|^2,
/// normalized with respect to prod_j dR_j dtheta_j (R_j = |alpha_j|^2).
inline double density_cv(const OutputState &state, std::span<const Complex> alphas) {
    if (static_cast<int>(alphas.size()) != state.modes) {
        throw InvalidArgument("density_cv: need one outcome per mode");
    }
    if (state.modes > kMaxDensityModes) {
        throw GuardError("density_cv limited to M <= " + std::to_string(kMaxDensityModes));
    }
    const int m = state.modes;
    const int n_max = state.photons;
    // overlap[j][k] = <1|D^dagger(alpha_j)|k>
    std::vector<std::vector<Complex>> overlap(m, std::vector<Complex>(n_max + 1));
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k <= n_max; ++k) {
            overlap[j][k] = std::conj(displacement_element(k, 1, alphas[j]));
        }
    }
    CompensatedSum<Complex> acc;
    for (std::size_t i = 0; i < state.patterns.size(); ++i) {
        Complex term = state.amplitudes[i];
        for (int j = 0; j < m; ++j) {
            term *= overlap[j][state.patterns[i][j]];
        }
        acc.add(term);
    }
    return std::norm(acc.value()) / std::pow(2.0 * std::numbers::pi, m);
}

inline double density_cv(const UnitaryMatrix &u, std::span<const Complex> alphas, int photons) {
    if (u.modes() > kMaxDensityModes) {
        throw GuardError("density_cv limited to M <= " + std::to_string(kMaxDensityModes));
    }
    return density_cv(output_state(u, photons), alphas);
}

/// PRCV-1 density P_P(R) = sum_n |<n|U|1_N>|^2 prod_j e^{-R_j} R_j^{n_j-1} (n_j - R_j)^2 / n_j!.
inline double density_prcv(const OutputState &state, std::span<const double> Rs) {
    if (static_cast<int>(Rs.size()) != state.modes) {
        throw InvalidArgument("density_prcv: need one R per mode");
    }
    std::array<std::array<double, kMaxTablePhotons + 1>, kMaxTableModes> f;
    for (int j = 0; j < state.modes; ++j) {
        if (!(Rs[j] >= 0.0)) {
            throw InvalidArgument("density_prcv: R must be non-negative");
        }
        for (int k = 0; k <= state.photons; ++k) {
            f[j][k] = prcv_povm_diag(1, Rs[j], k);
        }
    }
    CompensatedSum<double> acc;
    for (std::size_t i = 0; i < state.patterns.size(); ++i) {
        double term = std::norm(state.amplitudes[i]);
        for (int j = 0; j < state.modes; ++j) {
            term *= f[j][state.patterns[i][j]];
        }
        acc.add(term);
    }
    return acc.value();
}

inline double density_prcv(const UnitaryMatrix &u, std::span<const double> Rs, int photons) {
    return density_prcv(output_state(u, photons), Rs);
}

namespace detail {

struct ClickResponse {
    std::vector<double> click;
    std::vector<double> no_click;
};

inline ClickResponse click_response(double t, int photons) {
    if (!(t > 0.0)) {
        throw InvalidArgument("threshold t must be positive");
    }
    ClickResponse r{std::vector<double>(photons + 1), std::vector<double>(photons + 1)};
    for (int k = 0; k <= photons; ++k) {
        r.click[k] = g_function(t, k);
        r.no_click[k] = g_function_complement(t, k);
    }
    return r;
}

inline double prob_dprcv(const OutputState &state, const std::vector<double> &weights, std::span<const int> m,
                         const ClickResponse &resp) {
    CompensatedSum<double> acc;
    for (std::size_t i = 0; i < state.patterns.size(); ++i) {
        double term = weights[i];
        for (int j = 0; j < state.modes && term != 0.0; ++j) {
            const int n = state.patterns[i][j];
            term *= m[j] ? resp.click[n] : resp.no_click[n];
        }
        acc.add(term);
    }
    return acc.value();
}

}  // namespace detail

/// P_D(m) = sum_n |<n|U|1_N>|^2 prod_{m_j=1} G(t,n_j) prod_{m_j=0} (1 - G(t,n_j)),
/// for any number of clicks.
inline double prob_dprcv(const OutputState &state, std::span<const int> m, double t) {
    validate_click_pattern(m, state.modes);
    return detail::prob_dprcv(state, state.probabilities(), m, detail::click_response(t, state.photons));
}

inline double prob_dprcv(const UnitaryMatrix &u, std::span<const int> m, double t, int photons) {
    return prob_dprcv(output_state(u, photons), m, t);
}

/// Exact DPRCV-1 distribution over all 2^M click patterns.
struct DistributionTable {
    DetectorConfig detector;
    int modes = 0;
    int photons = 0;
    std::vector<ClickPattern> patterns;
    std::vector<double> probabilities;
    double normalization_residual = 0.0;
};

inline DistributionTable dprcv_table(const OutputState &state, const DetectorConfig &detector,
                                     unsigned threads = 1) {
    detector.validate();
    if (detector.ancilla_n != 1) {
        throw InvalidArgument("dprcv_table: only the ancilla-1 detector is supported");
    }
    DistributionTable table{detector, state.modes, state.photons, {}, {}, 0.0};
    const std::uint64_t count = std::uint64_t{1} << state.modes;
    table.patterns.resize(count);
    table.probabilities.resize(count);
    const auto weights = state.probabilities();
    const auto resp = detail::click_response(detector.threshold_t, state.photons);
    parallel_for(count, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            table.patterns[i] = click_pattern_at(i, state.modes);
            table.probabilities[i] = detail::prob_dprcv(state, weights, table.patterns[i], resp);
        }
    });
    table.normalization_residual = std::abs(pairwise_sum(table.probabilities) - 1.0);
    return table;
}

inline DistributionTable dprcv_table(const UnitaryMatrix &u, int photons, const DetectorConfig &detector,
                                     unsigned threads = 1) {
    return dprcv_table(output_state(u, photons, threads), detector, threads);
}

/// Small-t anatomy of P_D(m_N): the |Per|^2 t^N leading term and the summed
/// |Per|^2 weight of the patterns that differ from m_N by one 1<->0 interchange.
struct LeadingOrder {
    double perm_sq = 0.0;
    double leading = 0.0;
    double neighbor_mass = 0.0;
    int neighbors = 0;
};

inline LeadingOrder leading_order(const UnitaryMatrix &u, std::span<const int> m, double t, int photons) {
    validate_click_pattern(m, u.modes());
    if (photon_count(m) != photons) {
        throw InvalidPattern("leading_order: click count must equal the photon number");
    }
    if (!(t > 0.0)) {
        throw InvalidArgument("leading_order: t must be positive");
    }
    auto perm_sq = [&](std::span<const int> pattern) {
        return std::norm(permanent_ryser(submatrix_with_multiplicity(u, pattern, photons).entries));
    };
    LeadingOrder out;
    out.perm_sq = perm_sq(m);
    out.leading = out.perm_sq * std::pow(t, photons);
    ClickPattern nb(m.begin(), m.end());
    CompensatedSum<double> acc;
    for (int i = 0; i < u.modes(); ++i) {
        for (int j = 0; j < u.modes(); ++j) {
            if (m[i] == 1 && m[j] == 0) {
                nb[i] = 0;
                nb[j] = 1;
                acc.add(perm_sq(nb));
                ++out.neighbors;
                nb[i] = 1;
                nb[j] = 0;
            }
        }
    }
    out.neighbor_mass = acc.value();
    return out;
}

}  // namespace cvboson

#endif
