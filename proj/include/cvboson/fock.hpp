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

#ifndef CVBOSON_FOCK_HPP
#define CVBOSON_FOCK_HPP

#include <cmath>
#include <numbers>
#include <random>
#include <span>

#include "cvboson/common.hpp"
#include "cvboson/permanent.hpp"
#include "cvboson/special.hpp"

namespace cvboson {

inline constexpr double kUnitarityTolerance = 1e-12;

/// max_ij |(A^dagger A - I)_ij|
inline double unitarity_error(const ComplexMatrix &a) {
    const ComplexMatrix d = a.adjoint() * a - ComplexMatrix::Identity(a.cols(), a.cols());
    return d.cwiseAbs().maxCoeff();
}

/// M x M unitary describing a linear-optical network. U(i, j) is the amplitude
/// for a photon entering input mode i to leave through output mode j, so the
/// N-photon amplitudes use rows 0..N-1 and output columns with multiplicity.
class UnitaryMatrix {
   public:
    explicit UnitaryMatrix(ComplexMatrix m, double tolerance = kUnitarityTolerance) : m_(std::move(m)) {
        if (m_.rows() < 1 || m_.rows() != m_.cols()) {
            throw InvalidArgument("unitary matrix must be square with at least one mode");
        }
        const double err = unitarity_error(m_);
        if (!(err <= tolerance)) {
            throw InvalidArgument("matrix is not unitary: max|U^dagger U - I| = " + std::to_string(err));
        }
    }

    static UnitaryMatrix identity(int modes) { return UnitaryMatrix(ComplexMatrix::Identity(modes, modes)); }

    /// [[1, 1], [1, -1]] / sqrt(2)
    static UnitaryMatrix balanced_beamsplitter() {
        ComplexMatrix b(2, 2);
        const double s = std::numbers::sqrt2 / 2.0;
        b << s, s, s, -s;
        return UnitaryMatrix(b, 1e-15);
    }

    int modes() const { return static_cast<int>(m_.rows()); }
    const ComplexMatrix &matrix() const { return m_; }
    Complex operator()(int row, int col) const { return m_(row, col); }

   private:
    ComplexMatrix m_;
};

/// Occupation numbers n_1..n_M of a multimode Fock state.
using FockPattern = std::vector<int>;

inline int photon_count(std::span<const int> pattern) {
    int n = 0;
    for (int v : pattern) {
        n += v;
    }
    return n;
}

inline void validate_pattern(std::span<const int> pattern, int modes, int photons) {
    if (static_cast<int>(pattern.size()) != modes) {
        throw InvalidPattern("pattern has " + std::to_string(pattern.size()) + " modes, expected " +
                             std::to_string(modes));
    }
    for (int v : pattern) {
        if (v < 0) {
            throw InvalidPattern("pattern has a negative occupation");
        }
    }
    if (photon_count(pattern) != photons) {
        throw InvalidPattern("pattern holds " + std::to_string(photon_count(pattern)) + " photons, expected " +
                             std::to_string(photons));
    }
    if (photons > modes) {
        throw InvalidPattern("photon number exceeds mode count");
    }
}

/// Haar-random M x M unitary.
///
/// Entries of a complex Gaussian matrix are drawn row-major from a
/// std::mt19937_64 seeded with `seed`; each entry consumes two 64-bit words
/// u1, u2 mapped to (0, 1] and [0, 1) with 53-bit resolution, and Box-Muller
/// gives re + i im = sqrt(-2 ln u1) (cos 2 pi u2 + i sin 2 pi u2). Columns are
/// orthonormalized by modified Gram-Schmidt (two passes). That is the QR
/// factorization with a positive real R diagonal, which is exactly the phase
/// correction that makes Q Haar distributed.
inline UnitaryMatrix haar_unitary(int modes, std::uint64_t seed) {
    if (modes < 1) {
        throw InvalidArgument("haar_unitary: modes must be >= 1");
    }
    std::mt19937_64 engine(seed);
    constexpr double kScale = 0x1.0p-53;
    ComplexMatrix z(modes, modes);
    for (int r = 0; r < modes; ++r) {
        for (int c = 0; c < modes; ++c) {
            const double u1 = (static_cast<double>(engine() >> 11) + 1.0) * kScale;
            const double u2 = static_cast<double>(engine() >> 11) * kScale;
            const double radius = std::sqrt(-2.0 * std::log(u1));
            const double phase = 2.0 * std::numbers::pi * u2;
            z(r, c) = Complex(radius * std::cos(phase), radius * std::sin(phase));
        }
    }
    for (int c = 0; c < modes; ++c) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int p = 0; p < c; ++p) {
                const Complex proj = z.col(p).dot(z.col(c));
                z.col(c) -= proj * z.col(p);
            }
        }
        z.col(c) /= z.col(c).norm();
    }
    return UnitaryMatrix(z);
}

/// N x N matrix built from the first N rows of U and, for each output mode j,
/// column j repeated n_j times.
struct ComplexSubmatrix {
    ComplexMatrix entries;
    std::vector<int> rows;
    std::vector<int> columns;
};

inline ComplexSubmatrix submatrix_with_multiplicity(const UnitaryMatrix &u, std::span<const int> pattern,
                                                    int photons) {
    validate_pattern(pattern, u.modes(), photons);
    ComplexSubmatrix out;
    out.rows.resize(photons);
    for (int i = 0; i < photons; ++i) {
        out.rows[i] = i;
    }
    for (int j = 0; j < u.modes(); ++j) {
        for (int rep = 0; rep < pattern[j]; ++rep) {
            out.columns.push_back(j);
        }
    }
    out.entries.resize(photons, photons);
    for (int r = 0; r < photons; ++r) {
        for (int c = 0; c < photons; ++c) {
            out.entries(r, c) = u(r, out.columns[c]);
        }
    }
    return out;
}

/// <n| U_LON |1_N> = Per(U_{1_N x n}) / sqrt(prod_j n_j!)
inline Complex fock_amplitude(const UnitaryMatrix &u, std::span<const int> pattern, int photons) {
    const ComplexSubmatrix sub = submatrix_with_multiplicity(u, pattern, photons);
    double norm = 1.0;
    for (int v : pattern) {
        norm *= factorial(v);
    }
    return permanent_ryser(sub.entries) / std::sqrt(norm);
}

/// Fock-basis matrix element of the displacement operator,
///   <n|D(alpha)|k> = sqrt(k!/n!) e^{-|alpha|^2/2} alpha^{n-k} L_k^{n-k}(|alpha|^2),  n >= k,
/// and for n < k the equivalent form conj(<k|D(-alpha)|n>), which keeps the
/// Laguerre superscript non-negative and is regular at alpha = 0.
inline Complex displacement_element(int n, int k, Complex alpha) {
    if (n < 0 || k < 0) {
        throw InvalidArgument("displacement_element: negative Fock index");
    }
    const double x = std::norm(alpha);
    const int lo = std::min(n, k);
    const int d = std::abs(n - k);
    const Complex base = n >= k ? alpha : -std::conj(alpha);
    Complex power = 1.0;
    for (int i = 0; i < d; ++i) {
        power *= base;
    }
    double ratio = 1.0;
    for (int i = lo + 1; i <= lo + d; ++i) {
        ratio /= i;
    }
    return std::sqrt(ratio) * std::exp(-x / 2.0) * power * laguerre(lo, d, x);
}

/// Number of occupation patterns of N photons in M modes, C(N+M-1, M-1).
inline std::size_t fock_pattern_count(int modes, int photons) {
    return static_cast<std::size_t>(std::llround(binomial(photons + modes - 1, modes - 1)));
}

/// All weak compositions of N into M parts in lexicographic order, largest
/// first: (N,0,...,0), (N-1,1,0,...), ..., (0,...,0,N).
inline std::vector<FockPattern> enumerate_fock_patterns(int modes, int photons) {
    if (modes < 1 || photons < 0) {
        throw InvalidArgument("enumerate_fock_patterns: need modes >= 1 and photons >= 0");
    }
    std::vector<FockPattern> out;
    out.reserve(fock_pattern_count(modes, photons));
    FockPattern cur(modes, 0);
    auto rec = [&](auto &self, int pos, int remaining) -> void {
        if (pos == modes - 1) {
            cur[pos] = remaining;
            out.push_back(cur);
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            cur[pos] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, photons);
    return out;
}

}  // namespace cvboson

#endif
