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

#ifndef CVBOSON_COMMON_HPP
#define CVBOSON_COMMON_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

namespace cvboson {

inline constexpr std::string_view kVersion = "0.1.0";

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: wrong lengths, negative counts, out-of-domain parameters.
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

/// Occupation vector that does not match the mode count or photon number.
class InvalidPattern : public InvalidArgument {
   public:
    using InvalidArgument::InvalidArgument;
};

/// Problem size beyond what an exact (exponential-cost) routine accepts.
class GuardError : public Error {
   public:
    using Error::Error;
};

/// Quadrature or root finding that missed its tolerance.
class NumericalError : public Error {
   public:
    using Error::Error;
};

/// Neumaier-compensated accumulator. Works for double and std::complex<double>
/// (components are compensated independently).
template <typename T>
class CompensatedSum {
   public:
    void add(T x) {
        if constexpr (std::is_same_v<T, double>) {
            add_real(sum_, comp_, x);
        } else {
            double re = sum_.real(), im = sum_.imag();
            double cre = comp_.real(), cim = comp_.imag();
            add_real(re, cre, x.real());
            add_real(im, cim, x.imag());
            sum_ = T(re, im);
            comp_ = T(cre, cim);
        }
    }
    T value() const { return sum_ + comp_; }

   private:
    static void add_real(double &sum, double &comp, double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    T sum_{};
    T comp_{};
};

/// Pairwise reduction in a fixed tree order; the result depends only on the
/// input order, never on how the inputs were produced.
template <typename T>
T pairwise_sum(std::vector<T> values) {
    if (values.empty()) {
        return T{};
    }
    while (values.size() > 1) {
        std::vector<T> next((values.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < values.size(); i += 2) {
            next[i / 2] = values[i] + values[i + 1];
        }
        if (values.size() % 2 == 1) {
            next.back() = values.back();
        }
        values = std::move(next);
    }
    return values.front();
}

/// Runs fn(begin, end) over contiguous slices of [0, count) on up to `threads`
/// workers. Slices never overlap, so per-index outputs are thread-count invariant.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn &&fn) {
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2) {
        fn(std::size_t{0}, count);
        return;
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) {
            break;
        }
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto &t : pool) {
        t.join();
    }
}

inline double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) {
        r *= i;
    }
    return r;
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

}  // namespace cvboson

#endif
