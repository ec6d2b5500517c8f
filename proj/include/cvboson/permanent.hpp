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

#ifndef CVBOSON_PERMANENT_HPP
#define CVBOSON_PERMANENT_HPP

#include <bit>
#include <numeric>

#include "cvboson/common.hpp"

namespace cvboson {

inline constexpr int kNaivePermanentMaxDim = 10;
inline constexpr int kRyserPermanentMaxDim = 30;

enum class PermanentMethod { naive, ryser };

/// Order in which Ryser's inclusion-exclusion visits column subsets.
enum class SubsetOrder { gray, lexicographic };

struct PermanentResult {
    Complex value;
    PermanentMethod method;
    int dimension;
};

namespace detail {

inline void require_square(const ComplexMatrix &a) {
    if (a.rows() != a.cols()) {
        throw InvalidArgument("permanent: matrix is not square");
    }
}

inline Complex row_sum_product(const std::vector<Complex> &row_sums) {
    Complex p = 1.0;
    for (const auto &s : row_sums) {
        p *= s;
    }
    return p;
}

// Partial Ryser sum over Gray-code steps [k_begin, k_end), k >= 1.
inline Complex ryser_gray_range(const ComplexMatrix &a, std::uint64_t k_begin, std::uint64_t k_end) {
    const int n = static_cast<int>(a.rows());
    std::vector<Complex> row_sums(n, Complex(0.0));
    std::uint64_t code = (k_begin - 1) ^ ((k_begin - 1) >> 1);
    for (int j = 0; j < n; ++j) {
        if (code >> j & 1u) {
            for (int i = 0; i < n; ++i) {
                row_sums[i] += a(i, j);
            }
        }
    }
    CompensatedSum<Complex> acc;
    for (std::uint64_t k = k_begin; k < k_end; ++k) {
        const int j = std::countr_zero(k);
        code ^= std::uint64_t{1} << j;
        if (code >> j & 1u) {
            for (int i = 0; i < n; ++i) {
                row_sums[i] += a(i, j);
            }
        } else {
            for (int i = 0; i < n; ++i) {
                row_sums[i] -= a(i, j);
            }
        }
        const Complex term = row_sum_product(row_sums);
        acc.add(std::popcount(code) % 2 == 1 ? -term : term);
    }
    return acc.value();
}

inline Complex ryser_lexicographic(const ComplexMatrix &a) {
    const int n = static_cast<int>(a.rows());
    std::vector<Complex> row_sums(n);
    CompensatedSum<Complex> acc;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t s = 1; s < subsets; ++s) {
        for (int i = 0; i < n; ++i) {
            Complex sum = 0.0;
            for (int j = 0; j < n; ++j) {
                if (s >> j & 1u) {
                    sum += a(i, j);
                }
            }
            row_sums[i] = sum;
        }
        const Complex term = row_sum_product(row_sums);
        acc.add(std::popcount(s) % 2 == 1 ? -term : term);
    }
    return acc.value();
}

}  // namespace detail

/// Direct sum over all n! permutations. Reference implementation only.
inline Complex permanent_naive(const ComplexMatrix &a) {
    detail::require_square(a);
    const int n = static_cast<int>(a.rows());
    if (n > kNaivePermanentMaxDim) {
        throw GuardError("permanent_naive: dimension " + std::to_string(n) + " exceeds " +
                         std::to_string(kNaivePermanentMaxDim));
    }
    if (n == 0) {
        return 1.0;
    }
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    CompensatedSum<Complex> acc;
    do {
        Complex p = 1.0;
        for (int i = 0; i < n; ++i) {
            p *= a(i, sigma[i]);
        }
        acc.add(p);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return acc.value();
}

/// Ryser's formula, O(2^n n) with Gray-code row-sum updates.
///
/// The subset range is cut into a fixed number of chunks that depends only on
/// n. Chunks may run on several threads; their partial sums are combined by a
/// pairwise reduction in chunk order, so the result is bit-identical for any
/// thread count.
inline Complex permanent_ryser(const ComplexMatrix &a, SubsetOrder order = SubsetOrder::gray,
                               unsigned threads = 1) {
    detail::require_square(a);
    const int n = static_cast<int>(a.rows());
    if (n > kRyserPermanentMaxDim) {
        throw GuardError("permanent_ryser: dimension " + std::to_string(n) + " exceeds " +
                         std::to_string(kRyserPermanentMaxDim));
    }
    if (n == 0) {
        return 1.0;
    }
    const double sign = n % 2 == 1 ? -1.0 : 1.0;
    if (order == SubsetOrder::lexicographic) {
        return sign * detail::ryser_lexicographic(a);
    }
    const std::uint64_t subsets = std::uint64_t{1} << n;
    const std::uint64_t chunks = n >= 14 ? 64 : 1;
    const std::uint64_t per_chunk = subsets / chunks;
    std::vector<Complex> partial(chunks);
    parallel_for(chunks, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            std::uint64_t lo = std::max<std::uint64_t>(1, c * per_chunk);
            std::uint64_t hi = c + 1 == chunks ? subsets : (c + 1) * per_chunk;
            partial[c] = detail::ryser_gray_range(a, lo, hi);
        }
    });
    return sign * pairwise_sum(std::move(partial));
}

inline PermanentResult permanent(const ComplexMatrix &a, PermanentMethod method = PermanentMethod::ryser) {
    Complex v = method == PermanentMethod::naive ? permanent_naive(a) : permanent_ryser(a);
    return {v, method, static_cast<int>(a.rows())};
}

}  // namespace cvboson

#endif
