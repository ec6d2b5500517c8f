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

#ifndef CVBOSON_ESTIMATE_HPP
#define CVBOSON_ESTIMATE_HPP

#include <cmath>
#include <limits>

#include "cvboson/common.hpp"
#include "cvboson/distribution.hpp"
#include "cvboson/povm.hpp"
#include "cvboson/sampler.hpp"

namespace cvboson {

/// Click threshold of a b-bit discretization of R: t = 2 / (2^b - 1).
inline double t_from_bits(int b) {
    if (b < 1 || b > 62) {
        throw InvalidArgument("t_from_bits: b must lie in [1, 62]");
    }
    return 2.0 / (std::ldexp(1.0, b) - 1.0);
}

/// The pattern 1_N: the first N modes click, the rest do not.
inline ClickPattern first_n_clicks(int modes, int photons) {
    ClickPattern m(modes, 0);
    std::fill(m.begin(), m.begin() + photons, 1);
    return m;
}

/// Deviation of P_D(1_N) / t^N from |Per(U_{1_N x 1_N})|^2 over a t sweep, with
/// a least-squares fit Delta(t) ~ linear_coeff t + quadratic_coeff t^2.
struct SweepFit {
    std::vector<double> t_values;
    std::vector<double> p_exact;
    std::vector<double> p_over_tN;
    std::vector<double> deviations;
    double perm_sq = 0.0;
    double linear_coeff = 0.0;
    double quadratic_coeff = 0.0;
    /// max |Delta(t) - linear_coeff t| / t^2 over the sweep
    double quadratic_bound = 0.0;
    /// max |Delta(t) - linear_coeff t - quadratic_coeff t^2| / t^2
    double fit_residual = 0.0;
    double condition_number = 0.0;
    bool degenerate = false;
};

inline SweepFit deviation_sweep(const OutputState &state, std::span<const double> t_list) {
    if (t_list.size() < 4) {
        throw InvalidArgument("deviation_sweep: need at least 4 t values");
    }
    for (double t : t_list) {
        if (!(t > 0.0 && t <= 0.1)) {
            throw InvalidArgument("deviation_sweep: t values must lie in (0, 0.1]");
        }
    }
    const int n = state.photons;
    const ClickPattern target = first_n_clicks(state.modes, n);
    FockPattern ones(target.begin(), target.end());
    SweepFit fit;
    for (std::size_t i = 0; i < state.patterns.size(); ++i) {
        if (state.patterns[i] == ones) {
            fit.perm_sq = std::norm(state.amplitudes[i]);
        }
    }
    const auto weights = state.probabilities();
    for (double t : t_list) {
        const double p = detail::prob_dprcv(state, weights, target, detail::click_response(t, n));
        const double ratio = p / std::pow(t, n);
        fit.t_values.push_back(t);
        fit.p_exact.push_back(p);
        fit.p_over_tN.push_back(ratio);
        fit.deviations.push_back(ratio - fit.perm_sq);
    }
    // Normal equations for Delta = a t + b t^2 after scaling t by its maximum.
    const double scale = *std::max_element(t_list.begin(), t_list.end());
    double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
    for (std::size_t i = 0; i < fit.t_values.size(); ++i) {
        const double x = fit.t_values[i] / scale;
        s11 += x * x;
        s12 += x * x * x;
        s22 += x * x * x * x;
        r1 += x * fit.deviations[i];
        r2 += x * x * fit.deviations[i];
    }
    const double det = s11 * s22 - s12 * s12;
    const double tr = s11 + s22;
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    const double lmin = tr / 2.0 - disc, lmax = tr / 2.0 + disc;
    fit.condition_number = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
    fit.degenerate = fit.perm_sq < 1e-12 || !(fit.condition_number < 1e12);
    if (det > 0.0) {
        fit.linear_coeff = (r1 * s22 - r2 * s12) / det / scale;
        fit.quadratic_coeff = (s11 * r2 - s12 * r1) / det / (scale * scale);
    }
    for (std::size_t i = 0; i < fit.t_values.size(); ++i) {
        const double t = fit.t_values[i];
        const double lin = fit.deviations[i] - fit.linear_coeff * t;
        fit.quadratic_bound = std::max(fit.quadratic_bound, std::abs(lin) / (t * t));
        fit.fit_residual = std::max(fit.fit_residual, std::abs(lin - fit.quadratic_coeff * t * t) / (t * t));
    }
    return fit;
}

inline SweepFit deviation_sweep(const UnitaryMatrix &u, int photons, std::span<const double> t_list) {
    return deviation_sweep(output_state(u, photons), t_list);
}

/// Frequency estimate of |Per|^2 from DPRCV-1 samples: p~ = freq(1_N) / t^N.
struct PermEstimate {
    double p_tilde = 0.0;
    double standard_error = 0.0;
    /// One-sided 95% upper bound; the only informative number when hits == 0.
    double upper_bound = 0.0;
    std::size_t hits = 0;
    std::size_t shots = 0;
};

inline PermEstimate estimate_perm_from_samples(const SampleBatch<ClickPattern> &batch, double t, int photons) {
    if (batch.kind != DetectorKind::dprcv1 || !batch.detector) {
        throw InvalidArgument("estimate_perm_from_samples: batch must come from the DPRCV-1 sampler");
    }
    if (batch.detector->threshold_t != t) {
        throw InvalidArgument("estimate_perm_from_samples: batch threshold does not match t");
    }
    if (batch.outcomes.empty()) {
        throw InvalidArgument("estimate_perm_from_samples: empty batch");
    }
    const int modes = static_cast<int>(batch.outcomes.front().size());
    if (photons < 0 || photons > modes) {
        throw InvalidArgument("estimate_perm_from_samples: invalid photon number");
    }
    const ClickPattern target = first_n_clicks(modes, photons);
    PermEstimate e;
    e.shots = batch.outcomes.size();
    for (const auto &m : batch.outcomes) {
        e.hits += m == target ? 1 : 0;
    }
    const double tn = std::pow(t, photons);
    const double f = static_cast<double>(e.hits) / e.shots;
    e.p_tilde = f / tn;
    e.standard_error = std::sqrt(f * (1.0 - f) / e.shots) / tn;
    if (e.hits == 0) {
        e.upper_bound = -std::expm1(std::log(0.05) / e.shots) / tn;
    } else {
        e.upper_bound = e.p_tilde + 1.6448536269514722 * e.standard_error;
    }
    return e;
}

/// Outcome of checking the multiplicative-error chain
///   (P+E)/g < p~ < (P+E) g  and  |E|/L < 1/2
///   => (P-|E|)/g < p~ < (P+|E|) g
///   => P (1-|E|/L)/g < p~ < P (1+|E|/L) g
///   => P / ((1+2|E|/L) g) < p~ < P (1+2|E|/L) g.
struct BoundVerdict {
    bool applicable = false;
    bool premise = false;
    bool link_abs_error = false;
    bool link_relative = false;
    bool conclusion = false;
    double ratio = 0.0;
    double g_prime = 0.0;

    /// Applicable, and the conclusion holds whenever the premise does.
    bool sound() const { return applicable && (!premise || (link_abs_error && link_relative && conclusion)); }
};

inline BoundVerdict mult_bound_check(double perm_sq, double E, double L, double g, double p_tilde) {
    if (!(g > 1.0) || !(L > 0.0) || !(perm_sq >= L)) {
        throw InvalidArgument("mult_bound_check: need g > 1, L > 0 and perm_sq >= L");
    }
    BoundVerdict v;
    const double aE = std::abs(E);
    v.ratio = aE / L;
    v.applicable = v.ratio < 0.5;
    if (!v.applicable) {
        return v;
    }
    v.g_prime = (1.0 + 2.0 * v.ratio) * g;
    auto within = [&](double lo, double hi) { return lo < p_tilde && p_tilde < hi; };
    v.premise = within((perm_sq + E) / g, (perm_sq + E) * g);
    v.link_abs_error = within((perm_sq - aE) / g, (perm_sq + aE) * g);
    v.link_relative = within(perm_sq * (1.0 - v.ratio) / g, perm_sq * (1.0 + v.ratio) * g);
    v.conclusion = within(perm_sq / v.g_prime, perm_sq * v.g_prime);
    return v;
}

/// Named quantities of one estimation run.
struct EstimateReport {
    double perm_sq_true = 0.0;
    double perm_sq_estimate = 0.0;
    double error_term_E = 0.0;
    double lower_bound_L = 0.0;
    double mult_factor_g = 0.0;
    double effective_factor_g_prime = 0.0;
};

/// Splits P_D(1_N) / t^N = f(t) |Per|^2 + E, where f(t) |Per|^2 is the
/// contribution of the Fock pattern 1_N itself (f = 1 - O(t)) and E collects
/// every other pattern. Returns {f(t), E}.
inline std::pair<double, double> error_decomposition(const OutputState &state, double t) {
    const int n = state.photons;
    const ClickPattern target = first_n_clicks(state.modes, n);
    const FockPattern ones(target.begin(), target.end());
    const auto resp = detail::click_response(t, n);
    const double tn = std::pow(t, n);
    double factor = 1.0;
    for (int j = 0; j < state.modes; ++j) {
        factor *= target[j] ? resp.click[1] : resp.no_click[0];
    }
    factor /= tn;
    CompensatedSum<double> other;
    for (std::size_t i = 0; i < state.patterns.size(); ++i) {
        if (state.patterns[i] == ones) {
            continue;
        }
        double term = std::norm(state.amplitudes[i]);
        for (int j = 0; j < state.modes; ++j) {
            term *= target[j] ? resp.click[state.patterns[i][j]] : resp.no_click[state.patterns[i][j]];
        }
        other.add(term);
    }
    return {factor, other.value() / tn};
}

inline EstimateReport make_estimate_report(const OutputState &state, double t, double p_tilde, double L, double g) {
    if (!(L > 0.0) || !(g > 1.0)) {
        throw InvalidArgument("make_estimate_report: need L > 0 and g > 1");
    }
    EstimateReport r;
    const FockPattern ones = [&] {
        FockPattern p(state.modes, 0);
        std::fill(p.begin(), p.begin() + state.photons, 1);
        return p;
    }();
    for (std::size_t i = 0; i < state.patterns.size(); ++i) {
        if (state.patterns[i] == ones) {
            r.perm_sq_true = std::norm(state.amplitudes[i]);
        }
    }
    r.perm_sq_estimate = p_tilde;
    r.error_term_E = error_decomposition(state, t).second;
    r.lower_bound_L = L;
    r.mult_factor_g = g;
    r.effective_factor_g_prime = std::abs(r.error_term_E) / L < 0.5
                                     ? (1.0 + 2.0 * std::abs(r.error_term_E) / L) * g
                                     : std::numeric_limits<double>::infinity();
    return r;
}

}  // namespace cvboson

#endif
