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

#ifndef CVBOSON_POVM_HPP
#define CVBOSON_POVM_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <Eigen/Eigenvalues>

#include "cvboson/common.hpp"
#include "cvboson/fock.hpp"
#include "cvboson/special.hpp"

namespace cvboson {

/// Detector parameters: Fock ancilla |n>, click region R in [0, t], and
/// optionally the b-bit discretization that fixes t = 2 / (2^b - 1).
struct DetectorConfig {
    int ancilla_n = 1;
    double threshold_t = 0.0;
    std::optional<int> bits_b;

    static DetectorConfig with_threshold(double t, int ancilla = 1) {
        DetectorConfig c{ancilla, t, std::nullopt};
        c.validate();
        return c;
    }

    static DetectorConfig with_bits(int b, int ancilla = 1) {
        if (b < 1 || b > 62) {
            throw InvalidArgument("bits must lie in [1, 62]");
        }
        DetectorConfig c{ancilla, 2.0 / (std::ldexp(1.0, b) - 1.0), b};
        c.validate();
        return c;
    }

    void validate() const {
        if (ancilla_n < 0) {
            throw InvalidArgument("ancilla photon number must be non-negative");
        }
        if (!(threshold_t > 0.0) || !std::isfinite(threshold_t)) {
            throw InvalidArgument("threshold t must be positive and finite");
        }
        if (bits_b && threshold_t != 2.0 / (std::ldexp(1.0, *bits_b) - 1.0)) {
            throw InvalidArgument("threshold t does not match 2 / (2^b - 1)");
        }
    }
};

/// Raw outcome of one CV-n detector: the two homodyne quadratures and the
/// local-oscillator phase. alpha is treated as the single aggregated outcome.
struct CVOutcome {
    double x1 = 0.0;
    double p2 = 0.0;
    double theta = 0.0;

    Complex alpha() const { return Complex(x1, p2) * std::polar(1.0, theta); }
    double R() const { return x1 * x1 + p2 * p2; }
};

/// Operator on the Fock space truncated to photon numbers 0..cutoff.
struct TruncatedOperator {
    int cutoff = 0;
    ComplexMatrix entries;

    static TruncatedOperator diagonal(const std::vector<double> &d) {
        TruncatedOperator op{static_cast<int>(d.size()) - 1, ComplexMatrix::Zero(d.size(), d.size())};
        for (std::size_t k = 0; k < d.size(); ++k) {
            op.entries(k, k) = d[k];
        }
        return op;
    }

    Complex operator()(int j, int k) const { return entries(j, k); }

    double hermiticity_error() const { return (entries - entries.adjoint()).cwiseAbs().maxCoeff(); }

    double min_eigenvalue() const {
        const ComplexMatrix h = 0.5 * (entries + entries.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

    double trace() const { return entries.trace().real(); }
};

/// Efficiency of the DPRCV-1 detector, eta(t) = 1 - e^{-t}(1 + t^2).
inline double detector_efficiency(double t) {
    return -std::expm1(-t) - std::exp(-t) * t * t;
}

/// Dark-count probability of the DPRCV-1 detector, p_D(t) = 1 - e^{-t}(1 + t).
inline double detector_dark_count(double t) {
    return -std::expm1(-t) - std::exp(-t) * t;
}

namespace detail {

// k! G(t,k) from lower incomplete gammas.
inline double g_lower_form(double t, int k) {
    if (k == 0) {
        return lower_incomplete_gamma(2, t);
    }
    const double s = k * k * lower_incomplete_gamma(k, t) - 2.0 * k * lower_incomplete_gamma(k + 1, t) +
                     lower_incomplete_gamma(k + 2, t);
    return s / factorial(k);
}

// k! (1 - G(t,k)) from upper incomplete gammas.
inline double g_upper_form(double t, int k) {
    if (k == 0) {
        return upper_incomplete_gamma(2, t);
    }
    const double s = k * k * upper_incomplete_gamma(k, t) - 2.0 * k * upper_incomplete_gamma(k + 1, t) +
                     upper_incomplete_gamma(k + 2, t);
    return s / factorial(k);
}

inline void check_g_args(double t, int k) {
    if (!(t >= 0.0)) {
        throw InvalidArgument("G(t, k): t must be non-negative");
    }
    if (k < 0) {
        throw InvalidArgument("G(t, k): k must be non-negative");
    }
}

}  // namespace detail

/// Click probability of the DPRCV-1 detector for Fock state |k>:
///   G(t,k) = [k^2 gamma(k,t) - 2k gamma(k+1,t) + gamma(k+2,t)] / k!,
/// with G(t,0) = gamma(2,t). The lower form is used while G is the small side
/// of the split (t <= k+1) and 1 - upper form beyond, so both G and 1 - G keep
/// full relative precision.
inline double g_function(double t, int k) {
    detail::check_g_args(t, k);
    if (t == 0.0) {
        return 0.0;
    }
    if (std::isinf(t)) {
        return 1.0;
    }
    const double g = t <= k + 1.0 ? detail::g_lower_form(t, k) : 1.0 - detail::g_upper_form(t, k);
    return std::clamp(g, 0.0, 1.0);
}

/// 1 - G(t, k), evaluated without cancellation when G is close to one.
inline double g_function_complement(double t, int k) {
    detail::check_g_args(t, k);
    if (t == 0.0) {
        return 1.0;
    }
    if (std::isinf(t)) {
        return 0.0;
    }
    const double c = t <= k + 1.0 ? 1.0 - detail::g_lower_form(t, k) : detail::g_upper_form(t, k);
    return std::clamp(c, 0.0, 1.0);
}

/// Diagonal element <k| Pi^n(R) |k> of the phase-randomized CV-n POVM:
///   n! e^{-R} R^{k-n} (L_n^{k-n}(R))^2 / k!.
/// Written through lo = min(n,k), hi = max(n,k) the expression is symmetric,
///   lo!/hi! e^{-R} R^{hi-lo} (L_lo^{hi-lo}(R))^2,
/// which avoids negative powers and negative Laguerre superscripts.
inline double prcv_povm_diag(int ancilla_n, double R, int k) {
    if (ancilla_n < 0 || k < 0) {
        throw InvalidArgument("prcv_povm_diag: negative Fock index");
    }
    if (!(R >= 0.0)) {
        throw InvalidArgument("prcv_povm_diag: R must be non-negative");
    }
    const int lo = std::min(ancilla_n, k);
    const int d = std::abs(ancilla_n - k);
    if (R == 0.0) {
        return d == 0 ? 1.0 : 0.0;
    }
    const double l = laguerre(lo, d, R);
    const double log_pref = std::lgamma(lo + 1.0) - std::lgamma(lo + d + 1.0) - R + d * std::log(R);
    return std::exp(log_pref) * l * l;
}

/// int_0^t <k|Pi^n(R)|k> dR in closed form. Expanding L_lo^d(R) = sum_j c_j R^j
/// turns the integrand into a polynomial times e^{-R}, so the result is
///   lo!/hi! sum_{i,j} c_i c_j gamma(d+i+j+1, t).
/// For n = 1 this is G(t, k). Terms alternate in sign; accurate for moderate t.
inline double prcv_interval_probability(int ancilla_n, int k, double t) {
    if (ancilla_n < 0 || k < 0 || !(t >= 0.0)) {
        throw InvalidArgument("prcv_interval_probability: invalid arguments");
    }
    const int lo = std::min(ancilla_n, k);
    const int d = std::abs(ancilla_n - k);
    std::vector<double> c(lo + 1);
    for (int j = 0; j <= lo; ++j) {
        c[j] = (j % 2 == 0 ? 1.0 : -1.0) * binomial(lo + d, lo - j) / factorial(j);
    }
    CompensatedSum<double> acc;
    for (int i = 0; i <= lo; ++i) {
        for (int j = 0; j <= lo; ++j) {
            acc.add(c[i] * c[j] * lower_incomplete_gamma(d + i + j + 1, t));
        }
    }
    double pref = 1.0;
    for (int i = lo + 1; i <= lo + d; ++i) {
        pref /= i;
    }
    return pref * acc.value();
}

/// CV-n POVM element (1/2pi) D(alpha)|n><n|D^dagger(alpha) on levels 0..cutoff.
/// As a density it is normalized with respect to dR dtheta, R = |alpha|^2.
inline TruncatedOperator cvn_povm_element(int ancilla_n, Complex alpha, int cutoff) {
    if (ancilla_n < 0 || cutoff < ancilla_n) {
        throw InvalidArgument("cvn_povm_element: need 0 <= ancilla_n <= cutoff");
    }
    Eigen::VectorXcd v(cutoff + 1);
    for (int j = 0; j <= cutoff; ++j) {
        v(j) = displacement_element(j, ancilla_n, alpha);
    }
    return {cutoff, (v * v.adjoint()) / (2.0 * std::numbers::pi)};
}

/// Two-outcome DPRCV-1 POVM {Pi_t, I - Pi_t}, both diagonal.
inline std::pair<TruncatedOperator, TruncatedOperator> dprcv1_povm(double t, int cutoff) {
    if (!(t > 0.0)) {
        throw InvalidArgument("dprcv1_povm: t must be positive");
    }
    if (cutoff < 0) {
        throw InvalidArgument("dprcv1_povm: negative cutoff");
    }
    std::vector<double> click(cutoff + 1), no_click(cutoff + 1);
    for (int k = 0; k <= cutoff; ++k) {
        click[k] = g_function(t, k);
        no_click[k] = 1.0 - click[k];
    }
    return {TruncatedOperator::diagonal(click), TruncatedOperator::diagonal(no_click)};
}

struct DetectorCurvePoint {
    double t;
    double eta;
    double p_dark;
};

inline std::vector<DetectorCurvePoint> detector_curves(std::span<const double> t_grid) {
    std::vector<DetectorCurvePoint> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        if (!(t >= 0.0)) {
            throw InvalidArgument("detector_curves: t must be non-negative");
        }
        out.push_back({t, detector_efficiency(t), detector_dark_count(t)});
    }
    return out;
}

struct CompletenessLevel {
    int k;
    double integral;
    double residual;
    double error_estimate;
    bool converged;
};

/// |1 - int_0^{R_max} <k|Pi^n(R)|k> dR| for k = 0..cutoff, by adaptive
/// 61-point Gauss-Kronrod. Levels whose quadrature error estimate stays above
/// 1e-12 are reported with converged = false.
inline std::vector<CompletenessLevel> prcv_completeness_residual(int ancilla_n, int cutoff, double R_max) {
    if (!(R_max > 0.0) || cutoff < 0 || ancilla_n < 0) {
        throw InvalidArgument("prcv_completeness_residual: need R_max > 0 and non-negative indices");
    }
    std::vector<CompletenessLevel> out;
    for (int k = 0; k <= cutoff; ++k) {
        double err = 0.0;
        const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double R) { return prcv_povm_diag(ancilla_n, R, k); }, 0.0, R_max, 20, 1e-15, &err);
        out.push_back({k, value, std::abs(1.0 - value), err, err <= 1e-12});
    }
    return out;
}

}  // namespace cvboson

#endif
