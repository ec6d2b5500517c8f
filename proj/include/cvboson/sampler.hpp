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

#ifndef CVBOSON_SAMPLER_HPP
#define CVBOSON_SAMPLER_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>

#include "cvboson/common.hpp"
#include "cvboson/distribution.hpp"
#include "cvboson/fock.hpp"
#include "cvboson/povm.hpp"

namespace cvboson {

inline constexpr int kMaxCv1Modes = 4;
inline constexpr int kMaxCv1Photons = 3;

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based random stream: the variates for shot i depend only on
/// (seed, i). The key schedule mixes both words through SplitMix64's
/// finalizer; the stream itself is a SplitMix64 sequence from that state.
class ShotStream {
   public:
    ShotStream(std::uint64_t seed, std::uint64_t shot)
        : state_(splitmix64_mix(splitmix64_mix(seed) ^ splitmix64_mix(shot + 0x9e3779b97f4a7c15ULL))) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return splitmix64_mix(state_);
    }

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1).
    double uniform_open() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

   private:
    std::uint64_t state_;
};

enum class DetectorKind { fock, dprcv1, prcv1, cv1 };

inline std::string to_string(DetectorKind d) {
    switch (d) {
        case DetectorKind::fock:
            return "fock";
        case DetectorKind::dprcv1:
            return "dprcv1";
        case DetectorKind::prcv1:
            return "prcv1";
        case DetectorKind::cv1:
            return "cv1";
    }
    return "unknown";
}

template <typename Outcome>
struct SampleBatch {
    std::uint64_t seed = 0;
    std::size_t shots = 0;
    DetectorKind kind = DetectorKind::fock;
    std::optional<DetectorConfig> detector;
    std::vector<Outcome> outcomes;
};

/// Inverse-CDF lookup over a fixed discrete table.
class DiscreteSampler {
   public:
    explicit DiscreteSampler(std::span<const double> weights) : cdf_(weights.size()) {
        CompensatedSum<double> acc;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            acc.add(std::max(0.0, weights[i]));
            cdf_[i] = acc.value();
        }
        if (cdf_.empty() || !(cdf_.back() > 0.0)) {
            throw NumericalError("DiscreteSampler: table carries no probability mass");
        }
    }

    std::size_t operator()(double u) const {
        const double target = u * cdf_.back();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
        std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
        i = std::min(i, cdf_.size() - 1);
        // never land on a zero-weight entry at a plateau of the cdf
        while (i > 0 && cdf_[i] == cdf_[i - 1]) {
            --i;
        }
        return i;
    }

   private:
    std::vector<double> cdf_;
};

namespace detail {

inline void check_shots(std::size_t shots) {
    if (shots == 0) {
        throw InvalidArgument("shots must be positive");
    }
}

template <typename Outcome, typename Draw>
SampleBatch<Outcome> draw_batch(std::uint64_t seed, std::size_t shots, DetectorKind kind,
                                std::optional<DetectorConfig> detector, unsigned threads, Draw &&draw) {
    check_shots(shots);
    SampleBatch<Outcome> batch{seed, shots, kind, detector, std::vector<Outcome>(shots)};
    parallel_for(shots, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            ShotStream rng(seed, s);
            batch.outcomes[s] = draw(rng);
        }
    });
    return batch;
}

}  // namespace detail

/// Fock-basis BosonSampling: i.i.d. occupation patterns from |<n|U|1_N>|^2.
inline SampleBatch<FockPattern> sample_fock(const OutputState &state, std::size_t shots, std::uint64_t seed,
                                            unsigned threads = 1) {
    const auto p = state.probabilities();
    const DiscreteSampler pick(p);
    return detail::draw_batch<FockPattern>(seed, shots, DetectorKind::fock, std::nullopt, threads,
                                           [&](ShotStream &rng) { return state.patterns[pick(rng.uniform())]; });
}

inline SampleBatch<FockPattern> sample_fock(const UnitaryMatrix &u, int photons, std::size_t shots,
                                            std::uint64_t seed, unsigned threads = 1) {
    if (u.modes() > kMaxDensityModes) {
        throw GuardError("sample_fock limited to M <= " + std::to_string(kMaxDensityModes));
    }
    return sample_fock(output_state(u, photons, threads), shots, seed, threads);
}

inline SampleBatch<ClickPattern> sample_dprcv1(const DistributionTable &table, std::size_t shots,
                                               std::uint64_t seed, unsigned threads = 1) {
    const DiscreteSampler pick(table.probabilities);
    return detail::draw_batch<ClickPattern>(seed, shots, DetectorKind::dprcv1, table.detector, threads,
                                            [&](ShotStream &rng) { return table.patterns[pick(rng.uniform())]; });
}

inline SampleBatch<ClickPattern> sample_dprcv1(const UnitaryMatrix &u, int photons, double t, std::size_t shots,
                                               std::uint64_t seed, unsigned threads = 1) {
    return sample_dprcv1(dprcv_table(u, photons, DetectorConfig::with_threshold(t), threads), shots, seed, threads);
}

/// Solves G(R, k) = u for R by bracketed TOMS 748 root finding, i.e. draws
/// from the PRCV-1 outcome density of Fock state |k> by inverting its CDF.
inline double invert_g(int k, double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw InvalidArgument("invert_g: u must lie in (0, 1)");
    }
    // Compare on the complement side in the upper tail to keep resolution.
    const bool upper = u > 0.5;
    auto f = [&](double R) {
        return upper ? (1.0 - u) - g_function_complement(R, k) : g_function(R, k) - u;
    };
    double hi = k + 2.0;
    while (f(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e4) {
            throw NumericalError("invert_g: failed to bracket the root");
        }
    }
    std::uintmax_t iters = 200;
    auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-12 * std::max(1.0, std::abs(a)); };
    auto [a, b] = boost::math::tools::toms748_solve(f, 0.0, hi, f(0.0), f(hi), tol, iters);
    if (iters >= 200) {
        throw NumericalError("invert_g: root finder did not converge");
    }
    return 0.5 * (a + b);
}

/// PRCV-1 sampling in two stages: the Fock pattern n from |<n|U|1_N>|^2, then
/// each R_j independently from e^{-R} R^{n_j-1} (n_j - R)^2 / n_j!.
inline SampleBatch<std::vector<double>> sample_prcv1(const OutputState &state, std::size_t shots, std::uint64_t seed,
                                                     unsigned threads = 1) {
    const auto p = state.probabilities();
    const DiscreteSampler pick(p);
    return detail::draw_batch<std::vector<double>>(
        seed, shots, DetectorKind::prcv1, std::nullopt, threads, [&](ShotStream &rng) {
            const FockPattern &n = state.patterns[pick(rng.uniform())];
            std::vector<double> R(n.size());
            for (std::size_t j = 0; j < n.size(); ++j) {
                R[j] = invert_g(n[j], rng.uniform_open());
            }
            return R;
        });
}

inline SampleBatch<std::vector<double>> sample_prcv1(const UnitaryMatrix &u, int photons, std::size_t shots,
                                                     std::uint64_t seed, unsigned threads = 1) {
    return sample_prcv1(output_state(u, photons, threads), shots, seed, threads);
}

/// Polar grid for CV-1 sampling, in (R = |alpha|^2, theta).
///
/// Radial edges sit at quantiles of the PRCV-1 outcome density averaged over
/// Fock levels 0..N; the last edge is where that average has tail mass below
/// 1e-13. Angular cells are uniform on [0, 2 pi).
///
/// For each radial cell the grid stores the exact cell integrals
/// int h_a(R) h_b(R) dR of the per-level amplitude profiles
/// h_a(R) = e^{-R/2} R^{(a-1)/2} (a - R) / sqrt(a!), so that
/// <1|D^dagger(alpha)|a> = h_a(R) e^{-i (a-1) theta}.
struct Cv1Grid {
    int photons = 0;
    int radial_cells = 0;
    int angular_cells = 0;
    std::vector<double> radial_edges;
    // profile[c][a * (N+1) + b]
    std::vector<std::vector<double>> profile;
    // phase[c][d + N] = int_{cell c} e^{-i d theta} dtheta, d = a - b
    std::vector<std::vector<Complex>> phase;

    double r_max() const { return radial_edges.back(); }
};

inline Cv1Grid make_cv1_grid(int photons, int radial_cells = 512, int angular_cells = 256) {
    if (photons < 0 || radial_cells < 1 || angular_cells < 1) {
        throw InvalidArgument("make_cv1_grid: invalid grid shape");
    }
    Cv1Grid g{photons, radial_cells, angular_cells, {}, {}, {}};
    const int levels = photons + 1;
    auto mixture_tail = [&](double R) {
        double s = 0.0;
        for (int a = 0; a < levels; ++a) {
            s += g_function_complement(R, a);
        }
        return s / levels;
    };
    double r_max = 1.0;
    while (mixture_tail(r_max) > 1e-13) {
        r_max += 1.0;
    }
    g.radial_edges.resize(radial_cells + 1);
    g.radial_edges[0] = 0.0;
    g.radial_edges[radial_cells] = r_max;
    for (int c = 1; c < radial_cells; ++c) {
        const double level = static_cast<double>(c) / radial_cells;
        auto f = [&](double R) { return (1.0 - mixture_tail(R)) - level; };
        std::uintmax_t iters = 200;
        auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-13 * std::max(1.0, a); };
        auto [a, b] = boost::math::tools::toms748_solve(f, g.radial_edges[c - 1], r_max, tol, iters);
        g.radial_edges[c] = 0.5 * (a + b);
    }
    auto h = [](int a, double R) {
        if (R == 0.0) {
            return a == 1 ? 1.0 : 0.0;
        }
        return std::exp(-R / 2.0 + 0.5 * (a - 1) * std::log(R)) * (a - R) / std::sqrt(factorial(a));
    };
    g.profile.assign(radial_cells, std::vector<double>(levels * levels));
    for (int c = 0; c < radial_cells; ++c) {
        const double lo = g.radial_edges[c], hi = g.radial_edges[c + 1];
        for (int a = 0; a < levels; ++a) {
            for (int b = a; b < levels; ++b) {
                double v;
                if (a == b) {
                    v = g_function(hi, a) - g_function(lo, a);
                } else {
                    v = boost::math::quadrature::gauss<double, 20>::integrate(
                        [&](double R) { return h(a, R) * h(b, R); }, lo, hi);
                }
                g.profile[c][a * levels + b] = v;
                g.profile[c][b * levels + a] = v;
            }
        }
    }
    g.phase.assign(angular_cells, std::vector<Complex>(2 * photons + 1));
    const double width = 2.0 * std::numbers::pi / angular_cells;
    for (int c = 0; c < angular_cells; ++c) {
        const double lo = c * width, hi = (c + 1) * width;
        for (int d = -photons; d <= photons; ++d) {
            g.phase[c][d + photons] =
                d == 0 ? Complex(width)
                       : (std::polar(1.0, -d * hi) - std::polar(1.0, -d * lo)) / Complex(0.0, -static_cast<double>(d));
        }
    }
    return g;
}

/// CV-1 sampling, one mode at a time.
///
/// The output state is held as a dense tensor over occupations of the modes
/// not yet measured. For mode j the reduced Gram matrix
/// C_ab = sum_rest psi(a, rest) conj(psi(b, rest)) fixes the conditional
/// density (1/2pi) sum_ab C_ab h_a h_b e^{-i(a-b)theta}. A radial cell is drawn
/// from its exact marginal mass, then an angular cell given the radial cell,
/// then a point uniformly inside the chosen cell; the state is projected on
/// <1|D^dagger(alpha_j)| and the next mode follows.
inline SampleBatch<std::vector<Complex>> sample_cv1(const OutputState &state, const Cv1Grid &grid,
                                                    std::size_t shots, std::uint64_t seed, unsigned threads = 1) {
    if (state.modes > kMaxCv1Modes || state.photons > kMaxCv1Photons) {
        throw GuardError("sample_cv1 limited to M <= " + std::to_string(kMaxCv1Modes) +
                         ", N <= " + std::to_string(kMaxCv1Photons));
    }
    if (grid.photons != state.photons) {
        throw InvalidArgument("sample_cv1: grid built for a different photon number");
    }
    const int m = state.modes;
    const int levels = state.photons + 1;
    std::size_t tensor_size = 1;
    for (int j = 0; j < m; ++j) {
        tensor_size *= levels;
    }
    std::vector<Complex> initial(tensor_size, Complex(0.0));
    for (std::size_t i = 0; i < state.patterns.size(); ++i) {
        std::size_t idx = 0, stride = 1;
        for (int j = 0; j < m; ++j) {
            idx += state.patterns[i][j] * stride;
            stride *= levels;
        }
        initial[idx] = state.amplitudes[i];
    }
    const double width = 2.0 * std::numbers::pi / grid.angular_cells;
    return detail::draw_batch<std::vector<Complex>>(
        seed, shots, DetectorKind::cv1, std::nullopt, threads, [&](ShotStream &rng) {
            std::vector<Complex> psi = initial;
            std::vector<Complex> alphas(m);
            std::vector<Complex> gram(levels * levels);
            std::vector<double> radial(grid.radial_cells), angular(grid.angular_cells);
            for (int j = 0; j < m; ++j) {
                const std::size_t rest = psi.size() / levels;
                std::fill(gram.begin(), gram.end(), Complex(0.0));
                for (std::size_t r = 0; r < rest; ++r) {
                    for (int a = 0; a < levels; ++a) {
                        const Complex pa = psi[a + levels * r];
                        if (pa == Complex(0.0)) {
                            continue;
                        }
                        for (int b = 0; b < levels; ++b) {
                            gram[a * levels + b] += pa * std::conj(psi[b + levels * r]);
                        }
                    }
                }
                for (int c = 0; c < grid.radial_cells; ++c) {
                    double s = 0.0;
                    for (int a = 0; a < levels; ++a) {
                        s += gram[a * levels + a].real() * grid.profile[c][a * levels + a];
                    }
                    radial[c] = s;
                }
                const int rc = static_cast<int>(DiscreteSampler(radial)(rng.uniform()));
                const auto &prof = grid.profile[rc];
                for (int c = 0; c < grid.angular_cells; ++c) {
                    double s = 0.0;
                    for (int a = 0; a < levels; ++a) {
                        for (int b = 0; b < levels; ++b) {
                            s += (gram[a * levels + b] * prof[a * levels + b] *
                                  grid.phase[c][a - b + state.photons])
                                     .real();
                        }
                    }
                    angular[c] = s;
                }
                const int ac = static_cast<int>(DiscreteSampler(angular)(rng.uniform()));
                const double R =
                    grid.radial_edges[rc] + rng.uniform() * (grid.radial_edges[rc + 1] - grid.radial_edges[rc]);
                const double theta = (ac + rng.uniform()) * width;
                const Complex alpha = std::polar(std::sqrt(R), theta);
                alphas[j] = alpha;
                std::vector<Complex> overlap(levels);
                for (int a = 0; a < levels; ++a) {
                    overlap[a] = std::conj(displacement_element(a, 1, alpha));
                }
                std::vector<Complex> next(rest, Complex(0.0));
                for (std::size_t r = 0; r < rest; ++r) {
                    Complex s = 0.0;
                    for (int a = 0; a < levels; ++a) {
                        s += psi[a + levels * r] * overlap[a];
                    }
                    next[r] = s;
                }
                psi = std::move(next);
            }
            return alphas;
        });
}

inline SampleBatch<std::vector<Complex>> sample_cv1(const UnitaryMatrix &u, int photons, std::size_t shots,
                                                    std::uint64_t seed, int radial_cells = 512,
                                                    int angular_cells = 256, unsigned threads = 1) {
    if (u.modes() > kMaxCv1Modes || photons > kMaxCv1Photons) {
        throw GuardError("sample_cv1 limited to M <= " + std::to_string(kMaxCv1Modes) +
                         ", N <= " + std::to_string(kMaxCv1Photons));
    }
    return sample_cv1(output_state(u, photons, threads), make_cv1_grid(photons, radial_cells, angular_cells), shots,
                      seed, threads);
}

}  // namespace cvboson

#endif
