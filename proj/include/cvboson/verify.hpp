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

#ifndef CVBOSON_VERIFY_HPP
#define CVBOSON_VERIFY_HPP

#include <chrono>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include "cvboson/distribution.hpp"
#include "cvboson/estimate.hpp"
#include "cvboson/fock.hpp"
#include "cvboson/permanent.hpp"
#include "cvboson/povm.hpp"
#include "cvboson/sampler.hpp"

/// Invariant suite: independent reference computations and the end-to-end
/// checks run by `cvboson verify` and the acceptance test binary.
namespace cvboson::verify {

// ---------------------------------------------------------------------------
// Reference computations

/// <n|U_LON|1_N> by expanding prod_{i<N} (sum_o U(i, o) a_o^dagger) |0> over
/// all M^N output assignments. Shares no code with the permanent routines.
inline Complex dense_fock_amplitude(const UnitaryMatrix &u, std::span<const int> pattern, int photons) {
    validate_pattern(pattern, u.modes(), photons);
    const int m = u.modes();
    std::vector<int> outputs(photons, 0);
    Complex sum = 0.0;
    while (true) {
        std::vector<int> occ(m, 0);
        for (int o : outputs) {
            ++occ[o];
        }
        if (std::equal(occ.begin(), occ.end(), pattern.begin())) {
            Complex term = 1.0;
            for (int i = 0; i < photons; ++i) {
                term *= u(i, outputs[i]);
            }
            sum += term;
        }
        int pos = 0;
        while (pos < photons && ++outputs[pos] == m) {
            outputs[pos++] = 0;
        }
        if (pos == photons) {
            break;
        }
    }
    // a^dagger products create sqrt(prod n!) |n>
    double norm = 1.0;
    for (int v : pattern) {
        norm *= factorial(v);
    }
    return sum * std::sqrt(norm);
}

/// Cutoff beyond which every per-mode PRCV-1 density of Fock levels 0..N has
/// tail mass below `tail`.
inline double prcv_tail_cutoff(int photons, double tail = 1e-12) {
    double r = 1.0;
    while (true) {
        double worst = 0.0;
        for (int k = 0; k <= photons; ++k) {
            worst = std::max(worst, g_function_complement(r, k));
        }
        if (worst < tail) {
            return r;
        }
        r += 0.5;
    }
}

/// Integral of density_prcv over the cell prod_j ([0,t] if m_j = 1 else
/// (t, R_max]) by tensor-product 10-point Gauss-Legendre on panels of width
/// at most 1 (click side) and 5 (tail side).
inline double prcv_cell_integral(const OutputState &state, std::span<const int> m, double t) {
    const double r_max = prcv_tail_cutoff(state.photons);
    auto panels = [](double lo, double hi, double width) {
        std::vector<double> e{lo};
        while (e.back() + width < hi) {
            e.push_back(e.back() + width);
        }
        e.push_back(hi);
        return e;
    };
    const auto click_edges = panels(0.0, t, 1.0);
    const auto tail_edges = panels(t, std::max(r_max, t + 1.0), 5.0);
    std::vector<double> R(state.modes, 0.0);
    std::function<double(int)> integrate_from = [&](int j) -> double {
        if (j == state.modes) {
            return density_prcv(state, R);
        }
        const auto &edges = m[j] ? click_edges : tail_edges;
        double s = 0.0;
        for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
            s += boost::math::quadrature::gauss<double, 10>::integrate(
                [&](double x) {
                    R[j] = x;
                    return integrate_from(j + 1);
                },
                edges[p], edges[p + 1]);
        }
        return s;
    };
    return integrate_from(0);
}

// ---------------------------------------------------------------------------
// Statistics helpers

inline double total_variation(std::span<const double> p, std::span<const double> q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += std::abs(p[i] - q[i]);
    }
    return 0.5 * s;
}

/// Chi-square test of homogeneity for two count vectors over the same bins.
/// Bins whose pooled expected count is below 5 are merged.
inline double chi_square_two_sample_p(std::span<const double> a, std::span<const double> b) {
    const double na = std::accumulate(a.begin(), a.end(), 0.0);
    const double nb = std::accumulate(b.begin(), b.end(), 0.0);
    std::vector<std::pair<double, double>> bins;
    double pa = 0.0, pb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double tot = a[i] + b[i];
        if (tot * std::min(na, nb) / (na + nb) < 5.0) {
            pa += a[i];
            pb += b[i];
        } else {
            bins.emplace_back(a[i], b[i]);
        }
    }
    if (pa + pb > 0.0) {
        bins.emplace_back(pa, pb);
    }
    if (bins.size() < 2) {
        return 1.0;
    }
    double stat = 0.0;
    for (const auto &[x, y] : bins) {
        const double tot = x + y;
        const double ea = tot * na / (na + nb), eb = tot * nb / (na + nb);
        stat += (x - ea) * (x - ea) / ea + (y - eb) * (y - eb) / eb;
    }
    boost::math::chi_squared dist(static_cast<double>(bins.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

/// Chi-square goodness of fit of observed counts against probabilities;
/// cells with expected count below 5 are merged.
inline double chi_square_gof_p(std::span<const double> observed, std::span<const double> probs) {
    const double n = std::accumulate(observed.begin(), observed.end(), 0.0);
    double stat = 0.0, pool_o = 0.0, pool_e = 0.0;
    int cells = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = n * probs[i];
        if (e < 5.0) {
            pool_o += observed[i];
            pool_e += e;
            continue;
        }
        stat += (observed[i] - e) * (observed[i] - e) / e;
        ++cells;
    }
    if (pool_e > 0.0) {
        stat += (pool_o - pool_e) * (pool_o - pool_e) / pool_e;
        ++cells;
    }
    if (cells < 2) {
        return 1.0;
    }
    boost::math::chi_squared dist(cells - 1.0);
    return boost::math::cdf(boost::math::complement(dist, stat));
}

/// Empirical distribution of a batch of patterns over a given support.
template <typename Pattern>
std::vector<double> empirical(const std::vector<Pattern> &outcomes, const std::vector<Pattern> &support) {
    std::map<Pattern, std::size_t> index;
    for (std::size_t i = 0; i < support.size(); ++i) {
        index[support[i]] = i;
    }
    std::vector<double> counts(support.size(), 0.0);
    for (const auto &o : outcomes) {
        counts.at(index.at(o)) += 1.0;
    }
    for (auto &c : counts) {
        c /= static_cast<double>(outcomes.size());
    }
    return counts;
}

// ---------------------------------------------------------------------------
// Acceptance checks

enum class Level { quick, full };

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double budget_seconds = 0.0;
};

namespace detail {

class Recorder {
   public:
    void expect(bool ok, const std::string &what) {
        if (!ok) {
            ok_ = false;
            if (failures_++ < 5) {
                msg_ << "FAILED: " << what << "; ";
            }
        }
    }
    void note(const std::string &s) { msg_ << s << "; "; }
    bool ok() const { return ok_; }
    std::string text() const { return msg_.str(); }

   private:
    bool ok_ = true;
    int failures_ = 0;
    std::ostringstream msg_;
};

inline std::string fmt(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

inline CheckResult timed(int id, std::string name, double budget, const std::function<void(Recorder &)> &body) {
    const auto start = std::chrono::steady_clock::now();
    Recorder rec;
    try {
        body(rec);
    } catch (const std::exception &e) {
        rec.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rec.expect(secs < budget, "runtime " + fmt(secs) + " s over budget " + fmt(budget) + " s");
    return {id, std::move(name), rec.ok(), rec.text(), secs, budget};
}

}  // namespace detail

/// Efficiency and dark-count curves over t in [0, 3]; crossing at t = 1.
inline CheckResult check_detector_curves() {
    return detail::timed(1, "detector curves", 1.0, [](detail::Recorder &r) {
        std::vector<double> grid;
        for (int i = 0; i <= 300; ++i) {
            grid.push_back(i * 0.01);
        }
        const auto curves = detector_curves(grid);
        r.expect(curves.front().eta == 0.0 && curves.front().p_dark == 0.0, "curves vanish at t = 0");
        const auto at_one = detector_curves(std::vector<double>{1.0}).front();
        r.expect(std::abs(at_one.eta - at_one.p_dark) <= 1e-14, "|eta(1) - p_D(1)| <= 1e-14");
        r.expect(std::abs(at_one.eta - (1.0 - 2.0 / std::numbers::e)) <= 1e-15, "eta(1) = 1 - 2/e");
        double worst_g = 0.0;
        for (const auto &p : curves) {
            worst_g = std::max({worst_g, std::abs(p.eta - g_function(p.t, 1)), std::abs(p.p_dark - g_function(p.t, 0))});
        }
        r.expect(worst_g <= 1e-14, "curves agree with G(t,1), G(t,0)");
        const int dense = 100000;
        bool strict = true;
        for (int i = 1; i < dense; ++i) {
            const auto p = detector_curves(std::vector<double>{static_cast<double>(i) / dense}).front();
            strict = strict && p.eta > p.p_dark;
        }
        r.expect(strict, "eta > p_D on (0,1)");
        bool after = true;
        for (const auto &p : curves) {
            if (p.t > 1.0) {
                after = after && p.eta < p.p_dark;
            }
        }
        r.expect(after, "eta < p_D on (1,3]");
        r.note("max |curve - G| = " + detail::fmt(worst_g));
    });
}

/// Pi^1(0) = |1><1|, phase average of CV-1 = PRCV-1, PRCV-n completeness.
inline CheckResult check_povm_identities() {
    return detail::timed(2, "POVM identities", 30.0, [](detail::Recorder &r) {
        const int cutoff = 20;
        bool exact = true;
        for (int k = 0; k <= cutoff; ++k) {
            exact = exact && prcv_povm_diag(1, 0.0, k) == (k == 1 ? 1.0 : 0.0);
        }
        r.expect(exact, "Pi^1(0) diagonal is exactly delta_{k,1}");
        const int points = 2048;
        double worst_diag = 0.0, worst_off = 0.0;
        for (double R : {0.01, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0}) {
            ComplexMatrix avg = ComplexMatrix::Zero(cutoff + 1, cutoff + 1);
            for (int i = 0; i < points; ++i) {
                const double theta = 2.0 * std::numbers::pi * i / points;
                avg += cvn_povm_element(1, std::polar(std::sqrt(R), theta), cutoff).entries;
            }
            avg *= 2.0 * std::numbers::pi / points;
            for (int j = 0; j <= cutoff; ++j) {
                for (int k = 0; k <= cutoff; ++k) {
                    if (j == k) {
                        worst_diag = std::max(worst_diag, std::abs(avg(j, k) - prcv_povm_diag(1, R, k)));
                    } else {
                        worst_off = std::max(worst_off, std::abs(avg(j, k)));
                    }
                }
            }
        }
        r.expect(worst_diag <= 1e-8, "phase-averaged diagonal matches PRCV-1 to 1e-8");
        r.expect(worst_off <= 1e-8, "phase-averaged off-diagonal below 1e-8");
        double worst_res = 0.0;
        for (int n = 0; n <= 2; ++n) {
            for (const auto &lvl : prcv_completeness_residual(n, 5, 50.0)) {
                worst_res = std::max(worst_res, lvl.residual);
            }
        }
        r.expect(worst_res <= 1e-8, "PRCV-n completeness residual <= 1e-8 (n <= 2, k <= 5)");
        r.note("diag " + detail::fmt(worst_diag) + ", off " + detail::fmt(worst_off) + ", completeness " +
               detail::fmt(worst_res));
    });
}

/// Ryser against the naive oracle; all-ones permanents.
inline CheckResult check_permanent_engine() {
    return detail::timed(3, "permanent engine", 10.0, [](detail::Recorder &r) {
        std::mt19937_64 rng(20240601);
        std::normal_distribution<double> normal;
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            ComplexMatrix a(6, 6);
            for (int i = 0; i < 6; ++i) {
                for (int j = 0; j < 6; ++j) {
                    a(i, j) = Complex(normal(rng), normal(rng));
                }
            }
            const Complex ref = permanent_naive(a);
            worst = std::max(worst, std::abs(permanent_ryser(a) - ref) / std::abs(ref));
        }
        r.expect(worst <= 1e-9, "Ryser vs naive relative error <= 1e-9 on 1000 random 6x6");
        bool ones = true;
        for (int n = 1; n <= 10; ++n) {
            const Complex p = permanent_ryser(ComplexMatrix::Ones(n, n));
            ones = ones && std::abs(p - factorial(n)) <= 1e-12 * factorial(n);
        }
        r.expect(ones, "all-ones N x N gives N! for N <= 10");
        r.note("worst relative error " + detail::fmt(worst));
    });
}

/// Fock amplitudes against the dense oracle, DPRCV-1 normalization and
/// cell-integral consistency with the PRCV-1 density.
inline CheckResult check_distribution_exactness(Level level) {
    return detail::timed(4, "distribution exactness", 120.0, [level](detail::Recorder &r) {
        const int seeds = level == Level::full ? 20 : 5;
        double worst_amp = 0.0, worst_norm = 0.0, worst_cell = 0.0;
        for (int seed = 0; seed < seeds; ++seed) {
            for (int m = 1; m <= 6; ++m) {
                const UnitaryMatrix u = haar_unitary(m, 1000 + 17 * seed + m);
                for (int n = 0; n <= std::min(3, m); ++n) {
                    const OutputState state = output_state(u, n);
                    for (std::size_t i = 0; i < state.patterns.size(); ++i) {
                        worst_amp = std::max(worst_amp, std::abs(state.amplitudes[i] -
                                                                 dense_fock_amplitude(u, state.patterns[i], n)));
                    }
                    for (double t : {0.01, 0.3, 2.0}) {
                        const auto table = dprcv_table(state, DetectorConfig::with_threshold(t));
                        worst_norm = std::max(worst_norm, table.normalization_residual);
                    }
                    if (m <= 3 && n >= 1) {
                        const double t = 0.4;
                        for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << m); ++idx) {
                            const ClickPattern cp = click_pattern_at(idx, m);
                            worst_cell = std::max(
                                worst_cell, std::abs(prob_dprcv(state, cp, t) - prcv_cell_integral(state, cp, t)));
                        }
                    }
                }
            }
        }
        r.expect(worst_amp <= 1e-10, "Fock amplitudes match dense oracle to 1e-10");
        r.expect(worst_norm <= 1e-10, "DPRCV-1 tables sum to 1 within 1e-10");
        r.expect(worst_cell <= 1e-6, "cell integrals of PRCV-1 density match P_D within 1e-6");
        r.note("amp " + detail::fmt(worst_amp) + ", norm " + detail::fmt(worst_norm) + ", cell " +
               detail::fmt(worst_cell));
    });
}

/// Small-t law P_D(1_N)/t^N -> |Per|^2 and the single-mode slope.
inline CheckResult check_leading_order(Level level) {
    return detail::timed(5, "leading-order law", 120.0, [level](detail::Recorder &r) {
        std::vector<double> grid;
        for (int i = 0; i <= 8; ++i) {
            grid.push_back(std::pow(10.0, -4.0 + 0.25 * i));
        }
        const int count = level == Level::full ? 20 : 5;
        double worst_c = 0.0, worst_q = 0.0, worst_small = 0.0;
        for (int s = 0; s < count; ++s) {
            const UnitaryMatrix u = haar_unitary(6, 5000 + s);
            const SweepFit fit = deviation_sweep(u, 3, grid);
            double c = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                c = std::max(c, std::abs(fit.deviations[i]) / grid[i]);
            }
            worst_c = std::max(worst_c, c);
            worst_q = std::max(worst_q, fit.quadratic_bound);
            worst_small = std::max(worst_small, std::abs(fit.deviations.front()) / fit.perm_sq);
        }
        r.expect(worst_c <= 10.0, "|Delta(t)| <= C t with C <= 10 on [1e-4, 1e-2]");
        r.expect(worst_q <= 1e3, "|Delta(t) - a t| <= Q t^2 with Q <= 1e3");
        const SweepFit one = deviation_sweep(UnitaryMatrix::identity(1), 1, grid);
        r.expect(std::abs(one.linear_coeff + 1.5) <= 0.015, "M = N = 1 slope is -1.5 within 1%");
        r.note("C " + detail::fmt(worst_c) + ", Q " + detail::fmt(worst_q) + ", rel Delta(1e-4) " +
               detail::fmt(worst_small) + ", slope " + detail::fmt(one.linear_coeff));
    });
}

/// Sampler exactness, cross-detector consistency and thread invariance.
inline CheckResult check_samplers() {
    return detail::timed(6, "samplers", 180.0, [](detail::Recorder &r) {
        const std::size_t shots = 100000;
        double worst_tv = 0.0;
        for (auto [m, n, seed] : {std::tuple{4, 2, 11}, std::tuple{6, 2, 12}, std::tuple{5, 3, 13}}) {
            const UnitaryMatrix u = haar_unitary(m, seed);
            const OutputState state = output_state(u, n);
            const auto batch = sample_fock(state, shots, 100 + seed);
            worst_tv = std::max(worst_tv, total_variation(empirical(batch.outcomes, state.patterns),
                                                          state.probabilities()));
        }
        for (auto [m, n, t, seed] : {std::tuple{4, 2, 0.5, 21}, std::tuple{6, 3, 0.1, 22}, std::tuple{6, 2, 0.3, 23}}) {
            const UnitaryMatrix u = haar_unitary(m, seed);
            const auto table = dprcv_table(u, n, DetectorConfig::with_threshold(t));
            const auto batch = sample_dprcv1(table, shots, 200 + seed);
            worst_tv = std::max(worst_tv, total_variation(empirical(batch.outcomes, table.patterns),
                                                          table.probabilities));
        }
        r.expect(worst_tv <= 0.01, "empirical TV <= 0.01 at 1e5 shots");

        const UnitaryMatrix u = haar_unitary(3, 31);
        const OutputState state = output_state(u, 2);
        const double t = 0.8;
        const auto table = dprcv_table(state, DetectorConfig::with_threshold(t));
        const auto clicks = sample_dprcv1(table, shots, 301);
        const auto cont = sample_prcv1(state, shots, 302);
        std::vector<double> a(table.patterns.size(), 0.0), b(table.patterns.size(), 0.0);
        for (const auto &o : clicks.outcomes) {
            std::uint64_t idx = 0;
            for (int v : o) {
                idx = idx << 1 | static_cast<std::uint64_t>(v);
            }
            a[idx] += 1.0;
        }
        for (const auto &R : cont.outcomes) {
            std::uint64_t idx = 0;
            for (double x : R) {
                idx = idx << 1 | (x <= t ? 1u : 0u);
            }
            b[idx] += 1.0;
        }
        const double p = chi_square_two_sample_p(a, b);
        r.expect(p > 0.001, "coarse-grained PRCV-1 matches DPRCV-1 (chi-square p > 0.001)");

        const auto one = sample_prcv1(state, 2000, 77, 1);
        const auto four = sample_prcv1(state, 2000, 77, 4);
        const auto d1 = sample_dprcv1(table, 5000, 78, 1);
        const auto d3 = sample_dprcv1(table, 5000, 78, 3);
        r.expect(one.outcomes == four.outcomes && d1.outcomes == d3.outcomes, "batches identical across thread counts");
        r.note("worst TV " + detail::fmt(worst_tv) + ", chi-square p " + detail::fmt(p));
    });
}

/// Multiplicative-error chain: soundness on premise-satisfying inputs,
/// rejection when |E|/L >= 1/2, and g' = g at E = 0.
inline CheckResult check_bound_chain() {
    return detail::timed(7, "bound chain", 10.0, [](detail::Recorder &r) {
        std::mt19937_64 rng(4242);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        int violated = 0, premise_missed = 0;
        for (int i = 0; i < 10000; ++i) {
            const double perm_sq = 1e-6 + unit(rng);
            const double L = perm_sq * (0.01 + 0.99 * unit(rng));
            const double E = (unit(rng) - 0.5) * 0.999 * L;
            const double g = 1.0 + 2.0 * unit(rng) + 1e-9;
            const double lo = (perm_sq + E) / g, hi = (perm_sq + E) * g;
            const double p = lo + (hi - lo) * (0.001 + 0.998 * unit(rng));
            const BoundVerdict v = mult_bound_check(perm_sq, E, L, g, p);
            premise_missed += v.premise ? 0 : 1;
            violated += v.sound() && v.conclusion ? 0 : 1;
        }
        r.expect(premise_missed == 0, "generated cases satisfy the premise");
        r.expect(violated == 0, "chain conclusion holds on 1e4 fuzz cases");
        int accepted = 0;
        for (int i = 0; i < 10000; ++i) {
            const double perm_sq = 1e-6 + unit(rng);
            const double L = perm_sq * (0.01 + 0.99 * unit(rng));
            const double E = (unit(rng) < 0.5 ? -1.0 : 1.0) * L * (0.5 + 10.0 * unit(rng));
            const BoundVerdict v = mult_bound_check(perm_sq, E, L, 1.5, perm_sq);
            accepted += v.applicable ? 1 : 0;
        }
        r.expect(accepted == 0, "all |E|/L >= 1/2 cases rejected");
        const BoundVerdict zero = mult_bound_check(0.3, 0.0, 0.1, 1.7, 0.31);
        r.expect(zero.g_prime == 1.7, "E = 0 gives g' = g exactly");
    });
}

/// Hong-Ou-Mandel suppression on a balanced beamsplitter.
inline CheckResult check_hom() {
    return detail::timed(8, "HOM physics", 10.0, [](detail::Recorder &r) {
        const UnitaryMatrix bs = UnitaryMatrix::balanced_beamsplitter();
        const OutputState state = output_state(bs, 2);
        double p11 = 1.0, p20 = 0.0, p02 = 0.0;
        for (std::size_t i = 0; i < state.patterns.size(); ++i) {
            const double p = std::norm(state.amplitudes[i]);
            if (state.patterns[i] == FockPattern{1, 1}) p11 = p;
            if (state.patterns[i] == FockPattern{2, 0}) p20 = p;
            if (state.patterns[i] == FockPattern{0, 2}) p02 = p;
        }
        r.expect(p11 <= 1e-20, "P(1,1) <= 1e-20");
        r.expect(std::abs(p20 - 0.5) <= 1e-15 && std::abs(p02 - 0.5) <= 1e-15, "P(2,0) = P(0,2) = 1/2");
        double worst = 0.0;
        for (double t : {1e-3, 0.01, 0.1, 0.5, 1.0, 3.0}) {
            worst = std::max(worst, std::abs(prob_dprcv(state, ClickPattern{1, 1}, t) - g_function(t, 0) * g_function(t, 2)));
        }
        r.expect(worst <= 1e-12, "P_D(1,1) = G(t,0) G(t,2) to 1e-12");
        r.note("P(1,1) " + detail::fmt(p11) + ", P_D deviation " + detail::fmt(worst));
    });
}

inline std::vector<CheckResult> run_acceptance(Level level, std::ostream *progress = nullptr) {
    std::vector<std::function<CheckResult()>> checks = {
        [] { return check_detector_curves(); },
        [] { return check_povm_identities(); },
        [] { return check_permanent_engine(); },
        [level] { return check_distribution_exactness(level); },
        [level] { return check_leading_order(level); },
        [] { return check_samplers(); },
        [] { return check_bound_chain(); },
        [] { return check_hom(); },
    };
    std::vector<CheckResult> out;
    for (const auto &c : checks) {
        out.push_back(c());
        if (progress) {
            const auto &res = out.back();
            *progress << (res.passed ? "PASS" : "FAIL") << "  [" << res.id << "] " << res.name << " ("
                      << detail::fmt(res.seconds) << " s) " << res.detail << "\n";
            progress->flush();
        }
    }
    return out;
}

}  // namespace cvboson::verify

#endif
