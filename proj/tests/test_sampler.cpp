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

#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>

#include "cvboson/sampler.hpp"
#include "cvboson/verify.hpp"

using namespace cvboson;

namespace {

// Kuiper test of uniformity on [0, 1); asymptotic p-value.
double kuiper_p(std::vector<double> x) {
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double dplus = 0.0, dminus = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dplus = std::max(dplus, (i + 1) / n - x[i]);
        dminus = std::max(dminus, x[i] - i / n);
    }
    const double v = dplus + dminus;
    const double lambda = (std::sqrt(n) + 0.155 + 0.24 / std::sqrt(n)) * v;
    double q = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double a = 2.0 * j * j * lambda * lambda;
        q += (4.0 * j * j * lambda * lambda - 1.0) * std::exp(-a);
    }
    return std::clamp(2.0 * q, 0.0, 1.0);
}

// Counts of R values in bins [edges[i], edges[i+1]).
std::vector<double> histogram(const std::vector<double> &values, const std::vector<double> &edges) {
    std::vector<double> counts(edges.size() - 1, 0.0);
    for (double v : values) {
        auto it = std::upper_bound(edges.begin(), edges.end(), v);
        const std::size_t bin = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - edges.begin() - 1, 0),
                                                       counts.size() - 1);
        counts[bin] += 1.0;
    }
    return counts;
}

}  // namespace

TEST(ShotStream, DependsOnlyOnSeedAndShot) {
    ShotStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
    const auto va = a.next();
    EXPECT_EQ(va, b.next());
    EXPECT_NE(va, c.next());
    EXPECT_NE(va, d.next());
    ShotStream e(1, 1);
    for (int i = 0; i < 1000; ++i) {
        const double u = e.uniform(), v = e.uniform_open();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        EXPECT_GT(v, 0.0);
        EXPECT_LT(v, 1.0);
    }
}

TEST(SampleFock, HongOuMandel) {
    const auto batch = sample_fock(UnitaryMatrix::balanced_beamsplitter(), 2, 20000, 5);
    std::size_t twozero = 0;
    for (const auto &o : batch.outcomes) {
        EXPECT_NE(o, (FockPattern{1, 1}));
        twozero += o == FockPattern{2, 0} ? 1 : 0;
    }
    EXPECT_NEAR(twozero / 20000.0, 0.5, 5.0 * std::sqrt(0.25 / 20000));
}

TEST(SampleFock, IdentityAlwaysOnes) {
    for (const auto &o : sample_fock(UnitaryMatrix::identity(5), 3, 1000, 1).outcomes) {
        EXPECT_EQ(o, (FockPattern{1, 1, 1, 0, 0}));
    }
}

TEST(SampleFock, TotalVariation) {
    const auto state = output_state(haar_unitary(4, 3), 2);
    const auto batch = sample_fock(state, 100000, 9);
    EXPECT_EQ(batch.outcomes.size(), 100000u);
    EXPECT_LE(verify::total_variation(verify::empirical(batch.outcomes, state.patterns), state.probabilities()),
              0.01);
    EXPECT_THROW(sample_fock(haar_unitary(11, 1), 2, 10, 1), GuardError);
}

TEST(SampleDprcv, ClickRateIsEfficiency) {
    const std::size_t shots = 100000;
    const auto batch = sample_dprcv1(UnitaryMatrix::identity(1), 1, 0.1, shots, 11);
    double clicks = 0.0;
    for (const auto &o : batch.outcomes) {
        clicks += o[0];
    }
    const double eta = detector_efficiency(0.1);
    EXPECT_NEAR(clicks / shots, eta, 3.0 * std::sqrt(eta * (1 - eta) / shots));
    EXPECT_NEAR(eta, 0.086, 5e-4);
}

TEST(SampleDprcv, GoodnessOfFitOnWideTable) {
    const auto table = dprcv_table(haar_unitary(6, 23), 2, DetectorConfig::with_threshold(1.0));
    const auto batch = sample_dprcv1(table, 100000, 223);
    auto freq = verify::empirical(batch.outcomes, table.patterns);
    for (auto &f : freq) {
        f *= 100000.0;
    }
    EXPECT_GT(verify::chi_square_gof_p(freq, table.probabilities), 0.001);
}

TEST(SampleDprcv, ReproducibleAcrossRunsAndThreads) {
    const auto table = dprcv_table(haar_unitary(5, 2), 3, DetectorConfig::with_threshold(0.4));
    const auto a = sample_dprcv1(table, 5000, 99, 1);
    const auto b = sample_dprcv1(table, 5000, 99, 1);
    const auto c = sample_dprcv1(table, 5000, 99, 4);
    EXPECT_EQ(a.outcomes, b.outcomes);
    EXPECT_EQ(a.outcomes, c.outcomes);
    EXPECT_EQ(a.seed, 99u);
    EXPECT_EQ(a.kind, DetectorKind::dprcv1);
    ASSERT_TRUE(a.detector.has_value());
    EXPECT_EQ(a.detector->threshold_t, 0.4);
}

TEST(InvertG, InvertsClickFunction) {
    for (int k = 0; k <= 6; ++k) {
        for (double u : {1e-12, 1e-6, 0.01, 0.3, 0.5, 0.77, 0.999, 1 - 1e-9}) {
            const double R = invert_g(k, u);
            EXPECT_GE(R, 0.0);
            if (u <= 0.5) {
                EXPECT_NEAR(g_function(R, k), u, 1e-11 * std::max(u, 1e-3)) << k << " " << u;
            } else {
                EXPECT_NEAR(g_function_complement(R, k), 1 - u, 1e-10 * std::max(1 - u, 1e-3)) << k << " " << u;
            }
        }
    }
    EXPECT_THROW(invert_g(1, 0.0), InvalidArgument);
}

TEST(SamplePrcv, SingleModeHistogram) {
    const std::size_t shots = 100000;
    const auto batch = sample_prcv1(UnitaryMatrix::identity(1), 1, shots, 3);
    std::vector<double> values;
    for (const auto &o : batch.outcomes) {
        EXPECT_GE(o[0], 0.0);
        values.push_back(o[0]);
    }
    std::vector<double> edges{0.0}, probs;
    for (double e = 0.1; e < 8.0; e += 0.1) {
        edges.push_back(e);
    }
    edges.push_back(std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        probs.push_back(g_function(edges[i + 1], 1) - g_function(edges[i], 1));
    }
    EXPECT_GT(verify::chi_square_gof_p(histogram(values, edges), probs), 0.001);
}

TEST(SamplePrcv, CoarseGrainedFrequencyMatchesClickProbability) {
    const auto u = haar_unitary(4, 61);
    const auto state = output_state(u, 2);
    const std::size_t shots = 100000;
    const auto batch = sample_prcv1(state, shots, 62);
    const double t = 0.5;
    const ClickPattern target{1, 1, 0, 0};
    double hits = 0.0;
    for (const auto &R : batch.outcomes) {
        hits += (R[0] <= t && R[1] <= t && R[2] > t && R[3] > t) ? 1.0 : 0.0;
    }
    const double p = prob_dprcv(state, target, t);
    EXPECT_NEAR(hits / shots, p, 3.5 * std::sqrt(p * (1 - p) / shots));
}

TEST(SamplePrcv, ThreadInvariant) {
    const auto state = output_state(haar_unitary(3, 8), 2);
    EXPECT_EQ(sample_prcv1(state, 3000, 5, 1).outcomes, sample_prcv1(state, 3000, 5, 3).outcomes);
}

TEST(Cv1Grid, CellMassesSumToOne) {
    const auto g = make_cv1_grid(2, 64, 16);
    EXPECT_EQ(g.radial_edges.size(), 65u);
    for (int a = 0; a <= 2; ++a) {
        double s = 0.0;
        for (int c = 0; c < 64; ++c) {
            s += g.profile[c][a * 3 + a];
        }
        EXPECT_NEAR(s, 1.0, 1e-12);
    }
    // profile is symmetric in the two levels; nonzero phase harmonics integrate to zero
    EXPECT_EQ(g.profile[10][1], g.profile[10][3]);
    Complex ph = 0.0;
    for (int c = 0; c < 16; ++c) {
        ph += g.phase[c][2 + 1];
    }
    EXPECT_NEAR(std::abs(ph), 0.0, 1e-14);
}

TEST(SampleCv1, SingleModeRadialHistogram) {
    const std::size_t shots = 50000;
    const auto batch = sample_cv1(UnitaryMatrix::identity(1), 1, shots, 4);
    std::vector<double> values;
    for (const auto &o : batch.outcomes) {
        values.push_back(std::norm(o[0]));
    }
    std::vector<double> edges{0.0}, probs;
    for (double e = 0.2; e < 8.0; e += 0.2) {
        edges.push_back(e);
    }
    edges.push_back(std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        probs.push_back(g_function(edges[i + 1], 1) - g_function(edges[i], 1));
    }
    EXPECT_GT(verify::chi_square_gof_p(histogram(values, edges), probs), 0.001);
}

namespace {

// Exact probabilities of coarse polar cells for the first mode of a CV-1
// measurement, from the reduced density matrix of that mode.
std::vector<double> first_mode_cells(const OutputState &state, const std::vector<double> &r_edges,
                                     const std::vector<double> &th_edges) {
    const int levels = state.photons + 1;
    ComplexMatrix rho = ComplexMatrix::Zero(levels, levels);
    for (std::size_t i = 0; i < state.patterns.size(); ++i) {
        for (std::size_t j = 0; j < state.patterns.size(); ++j) {
            bool same_rest = true;
            for (int k = 1; k < state.modes; ++k) {
                same_rest = same_rest && state.patterns[i][k] == state.patterns[j][k];
            }
            if (same_rest) {
                rho(state.patterns[i][0], state.patterns[j][0]) +=
                    state.amplitudes[i] * std::conj(state.amplitudes[j]);
            }
        }
    }
    auto density = [&](double R, double th) {
        Eigen::VectorXcd v(levels);
        for (int a = 0; a < levels; ++a) {
            v(a) = displacement_element(a, 1, std::polar(std::sqrt(R), th));
        }
        return (v.adjoint() * rho * v)(0, 0).real() / (2.0 * std::numbers::pi);
    };
    using Q = boost::math::quadrature::gauss<double, 15>;
    std::vector<double> out;
    for (std::size_t a = 0; a + 1 < r_edges.size(); ++a) {
        for (std::size_t b = 0; b + 1 < th_edges.size(); ++b) {
            double cell = 0.0;
            for (double lo = r_edges[a]; lo < r_edges[a + 1]; lo += 0.5) {
                cell += Q::integrate(
                    [&](double R) {
                        return Q::integrate([&](double th) { return density(R, th); }, th_edges[b],
                                            th_edges[b + 1]);
                    },
                    lo, std::min(lo + 0.5, r_edges[a + 1]));
            }
            out.push_back(cell);
        }
    }
    return out;
}

}  // namespace

TEST(SampleCv1, GridRefinementReducesError) {
    const auto state = output_state(haar_unitary(2, 14), 2);
    const std::vector<double> r_edges{0.0, 0.3, 0.8, 1.5, 2.5, 4.0, 60.0};
    std::vector<double> th_edges;
    for (int i = 0; i <= 7; ++i) {
        th_edges.push_back(0.37 + 2.0 * std::numbers::pi * i / 7.0);
    }
    const auto exact = first_mode_cells(state, r_edges, th_edges);
    EXPECT_NEAR(std::accumulate(exact.begin(), exact.end(), 0.0), 1.0, 1e-9);
    auto tv_for = [&](int radial, int angular) {
        const auto grid = make_cv1_grid(2, radial, angular);
        const auto batch = sample_cv1(state, grid, 200000, 15);
        std::vector<double> freq(exact.size(), 0.0);
        for (const auto &o : batch.outcomes) {
            const double R = std::norm(o[0]);
            double th = std::arg(o[0]);
            while (th < th_edges.front()) th += 2.0 * std::numbers::pi;
            while (th >= th_edges.back()) th -= 2.0 * std::numbers::pi;
            const std::size_t ra = std::upper_bound(r_edges.begin(), r_edges.end(), R) - r_edges.begin() - 1;
            const std::size_t tb = std::upper_bound(th_edges.begin(), th_edges.end(), th) - th_edges.begin() - 1;
            freq[std::min(ra, r_edges.size() - 2) * (th_edges.size() - 1) + tb] += 1.0 / batch.outcomes.size();
        }
        return verify::total_variation(freq, exact);
    };
    const double coarse = tv_for(2, 2);
    const double medium = tv_for(4, 4);
    const double fine = tv_for(512, 256);
    EXPECT_LT(medium, coarse);
    EXPECT_LT(fine, medium);
    EXPECT_LE(fine, 0.01);
}

TEST(SampleCv1, LaterModePhaseIsUniformOverHaarEnsemble) {
    const auto grid = make_cv1_grid(1, 128, 64);
    std::vector<double> phases;
    for (int s = 0; s < 3000; ++s) {
        const auto state = output_state(haar_unitary(3, 70000 + s), 1);
        const auto batch = sample_cv1(state, grid, 1, s);
        for (int j : {1, 2}) {
            phases.push_back(std::arg(batch.outcomes[0][j]) / (2.0 * std::numbers::pi) + 0.5);
        }
    }
    EXPECT_GT(kuiper_p(phases), 0.001);
}

TEST(SampleCv1, ThreadInvariantAndGuarded) {
    const auto state = output_state(haar_unitary(3, 2), 2);
    const auto grid = make_cv1_grid(2, 64, 32);
    EXPECT_EQ(sample_cv1(state, grid, 500, 3, 1).outcomes, sample_cv1(state, grid, 500, 3, 4).outcomes);
    EXPECT_THROW(sample_cv1(haar_unitary(5, 1), 2, 10, 1), GuardError);
    EXPECT_THROW(sample_cv1(haar_unitary(4, 1), 4, 10, 1), GuardError);
}

TEST(SampleFock, ThreadInvariant) {
    const auto state = output_state(haar_unitary(6, 2), 3);
    EXPECT_EQ(sample_fock(state, 4000, 8, 1).outcomes, sample_fock(state, 4000, 8, 5).outcomes);
}
