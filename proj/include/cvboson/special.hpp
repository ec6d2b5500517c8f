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

#ifndef CVBOSON_SPECIAL_HPP
#define CVBOSON_SPECIAL_HPP

#include <cmath>
#include <limits>

#include "cvboson/common.hpp"

namespace cvboson {

/// Generalized Laguerre polynomial L_n^m(x) by the three-term recurrence
///   (j+1) L_{j+1} = (2j+1+m-x) L_j - (j+m) L_{j-1}.
/// Valid for any integer m, including negative superscripts.
inline double laguerre(int n, int m, double x) {
    if (n < 0) {
        throw InvalidArgument("laguerre: negative degree");
    }
    double prev = 1.0;
    if (n == 0) {
        return prev;
    }
    double cur = 1.0 + m - x;
    for (int j = 1; j < n; ++j) {
        double next = ((2.0 * j + 1.0 + m - x) * cur - (j + m) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Lower incomplete gamma function of positive integer order,
/// gamma(k, t) = int_0^t e^{-R} R^{k-1} dR.
///
/// For t >= k the upward recurrence gamma(j+1,t) = j gamma(j,t) - t^j e^{-t}
/// is stable and is used from gamma(1,t) = 1 - e^{-t}. Below that it loses
/// roughly log10((k-1)!) digits, so the convergent series
///   gamma(k,t) = t^k e^{-t} sum_j t^j / (k (k+1) ... (k+j))
/// is used instead.
inline double lower_incomplete_gamma(int k, double t) {
    if (k < 1) {
        throw InvalidArgument("lower_incomplete_gamma: order must be >= 1");
    }
    if (!(t >= 0.0)) {
        throw InvalidArgument("lower_incomplete_gamma: t must be non-negative");
    }
    if (t == 0.0) {
        return 0.0;
    }
    if (std::isinf(t)) {
        return factorial(k - 1);
    }
    if (t < k) {
        double term = 1.0 / k;
        double sum = term;
        for (int j = 1; j < 1000; ++j) {
            term *= t / (k + j);
            sum += term;
            if (term < sum * 1e-17) {
                break;
            }
        }
        double pref = std::pow(t, k) * std::exp(-t);
        if (!std::isfinite(pref) || pref == 0.0) {
            pref = std::exp(k * std::log(t) - t);
        }
        return pref * sum;
    }
    const double et = std::exp(-t);
    double g = -std::expm1(-t);
    double tj = 1.0;
    for (int j = 1; j < k; ++j) {
        tj *= t;
        g = std::fma(static_cast<double>(j), g, -tj * et);
    }
    return g;
}

/// Upper incomplete gamma of positive integer order,
/// Gamma(k, t) = (k-1)! e^{-t} sum_{j<k} t^j / j!.
inline double upper_incomplete_gamma(int k, double t) {
    if (k < 1) {
        throw InvalidArgument("upper_incomplete_gamma: order must be >= 1");
    }
    if (!(t >= 0.0)) {
        throw InvalidArgument("upper_incomplete_gamma: t must be non-negative");
    }
    if (std::isinf(t)) {
        return 0.0;
    }
    double term = 1.0;
    double sum = 1.0;
    for (int j = 1; j < k; ++j) {
        term *= t / j;
        sum += term;
    }
    return factorial(k - 1) * std::exp(-t) * sum;
}

}  // namespace cvboson

#endif
