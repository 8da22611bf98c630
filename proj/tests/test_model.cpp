/*
 * Copyright 2026 The gammachain Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include <gammachain/ed.hpp>
#include <gammachain/model.hpp>
#include <gammachain/oracle.hpp>

using namespace gammachain;

namespace {

ModelParams point(double alpha, double h, int N = 2000) {
    ModelParams p;
    p.gamma = 0.6;
    p.Gamma = 0.6;
    p.alpha = alpha;
    p.h = h;
    p.N = N;
    return p;
}

}  // namespace

TEST(MomentumGrid, AntiperiodicN4) {
    const MomentumGrid g = momentum_grid(4, Sector::antiperiodic);
    const std::vector<double> want{-3 * M_PI / 4, -M_PI / 4, M_PI / 4, 3 * M_PI / 4};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(g.k[i], want[i], 1e-15);
}

TEST(MomentumGrid, PeriodicN4) {
    const MomentumGrid g = momentum_grid(4, Sector::periodic);
    const std::vector<double> want{-M_PI / 2, 0, M_PI / 2, M_PI};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(g.k[i], want[i], 1e-15);
}

TEST(MomentumGrid, AntiperiodicSumsToZero) {
    const MomentumGrid g = momentum_grid(6, Sector::antiperiodic);
    ASSERT_EQ(g.k.size(), 6u);
    EXPECT_NEAR(std::accumulate(g.k.begin(), g.k.end(), 0.0), 0.0, 1e-14);
}

TEST(MomentumGrid, PartnersNegateMomentum) {
    for (Sector s : {Sector::antiperiodic, Sector::periodic}) {
        const MomentumGrid g = momentum_grid(10, s);
        for (int i = 0; i < 10; ++i) {
            const int j = partner_index(i, 10, s);
            if (j < 0) {
                EXPECT_TRUE(std::abs(g.k[i]) < 1e-15 || std::abs(g.k[i] - M_PI) < 1e-15);
                continue;
            }
            EXPECT_NEAR(g.k[i], -g.k[j], 1e-14);
        }
    }
}

TEST(MomentumGrid, RejectsOddN) {
    EXPECT_THROW(momentum_grid(7, Sector::antiperiodic), invalid_parameter);
    EXPECT_THROW(momentum_grid(2, Sector::periodic), invalid_parameter);
}

TEST(Dispersion, XXLimitCollapses) {
    ModelParams p;
    p.gamma = 0;
    p.Gamma = 0;
    p.h = 0.3;
    for (double a : {-0.7, 0.0, 0.9}) {
        p.alpha = a;
        for (double k = -3; k <= 3; k += 0.25) EXPECT_NEAR(dispersion(p, k), 2 * std::abs(std::cos(k) - 0.3), 1e-14);
    }
}

TEST(Dispersion, ZeroMomentum) {
    for (double h : {0.2, 1.0, 1.7}) EXPECT_NEAR(dispersion(point(0.5, h), 0.0), 2 * std::abs(1 - h), 1e-14);
}

TEST(Dispersion, CriticalSmallMomentumSlope) {
    const ModelParams p = point(0.5, 1.0);
    const double k = 1e-6;
    EXPECT_NEAR(dispersion(p, k) / k, 2 * std::sqrt(0.36 + 0.81) - 0.6, 1e-5);
    EXPECT_NEAR(2 * std::sqrt(0.36 + 0.81) - 0.6, 1.56333, 1e-5);
}

TEST(Dispersion, EqualsBdGEigenvalue) {
    const ModelParams p = point(-0.3, 0.8);
    for (double k = -3; k <= 3; k += 0.37) {
        const BdGBlock b = bdg_block(p, k), m = bdg_block(p, -k);
        // eigenvalues of [[A_k, B], [B*, -A_-k]]
        const double tr = b.A - m.A, det = -b.A * m.A - std::norm(b.B);
        const double lmax = 0.5 * (tr + std::sqrt(tr * tr - 4 * det));
        EXPECT_NEAR(dispersion(p, k), 2 * lmax, 1e-12);
    }
}

TEST(Dispersion, EvenWhenChiralTermVanishes) {
    ModelParams p = point(1.0, 0.7);
    for (double k = 0.1; k < 3; k += 0.3) EXPECT_NEAR(dispersion(p, k), dispersion(p, -k), 1e-14);
    p = point(-0.4, 0.7);
    p.Gamma = 0;
    for (double k = 0.1; k < 3; k += 0.3) EXPECT_NEAR(dispersion(p, k), dispersion(p, -k), 1e-14);
}

TEST(Dispersion, GammaSignMirrorsMomentum) {
    ModelParams p = point(-0.4, 0.7), q = p;
    q.Gamma = -p.Gamma;
    for (double k = 0.1; k < 3; k += 0.3) EXPECT_NEAR(dispersion(q, -k), dispersion(p, k), 1e-14);
}

TEST(Spectrum, GappedPointAllPositive) {
    const Spectrum sp = spectrum(point(0.5, 0.5, 200), Sector::antiperiodic);
    for (std::size_t i = 0; i < sp.energies.size(); ++i) {
        EXPECT_GT(sp.energies[i], 0);
        EXPECT_FALSE(sp.filled[i]);
    }
}

TEST(Spectrum, SpiralPointHasNegativeModes) {
    const Spectrum sp = spectrum(point(-0.5, 0.5, 200), Sector::antiperiodic);
    EXPECT_TRUE(std::any_of(sp.energies.begin(), sp.energies.end(), [](double e) { return e < 0; }));
}

TEST(Spectrum, MatchesDispersionAndNormalized) {
    for (Sector s : {Sector::antiperiodic, Sector::periodic}) {
        const ModelParams p = point(-0.5, 0.5, 64);
        const Spectrum sp = spectrum(p, s);
        for (std::size_t i = 0; i < sp.energies.size(); ++i) {
            EXPECT_EQ(sp.energies[i], dispersion(p, sp.grid.k[i]));
            const Bogoliubov& b = sp.bogoliubov[i];
            EXPECT_NEAR(b.u * b.u + b.v * b.v, 1.0, 1e-14);
        }
    }
}

TEST(Gap, XXChainAtLargeField) {
    ModelParams p;
    p.gamma = p.Gamma = 0;
    p.h = 2;
    const GapResult g = excitation_gap(p);
    EXPECT_NEAR(g.gap, 2.0, 1e-12);
    EXPECT_NEAR(g.k_gap, 0.0, 1e-6);
}

TEST(Gap, SignedMinimumByPhase) {
    EXPECT_LT(excitation_gap(point(0.5, 1.0)).gap, 1e-8);
    EXPECT_LT(excitation_gap(point(-0.5, 0.5)).signed_min, 0);
    EXPECT_EQ(excitation_gap(point(-0.5, 0.5)).gap, 0.0);
    EXPECT_GT(excitation_gap(point(0.5, 0.5)).gap, 0.1);
}

TEST(Gap, VanishesOnAllCriticalLines) {
    EXPECT_LT(excitation_gap(point(0.5, 1.0)).gap, 1e-8);
    EXPECT_LT(excitation_gap(point(-0.25, 0.5)).gap, 1e-8);
    EXPECT_LT(excitation_gap(point(-0.5, std::sqrt(1.36))).gap, 1e-8);
    EXPECT_LT(excitation_gap(point(-0.8, std::sqrt(1 - 0.36 + 1.44 * 0.8))).gap, 1e-8);
}

TEST(Gap, IsingRatioAtZeroMomentum) {
    for (double d : {1e-3, 1e-4}) EXPECT_NEAR(dispersion(point(0.5, 1 + d), 0.0) / (2 * d), 1.0, 1e-12);
}

// The chiral term tilts the cone, so the true minimum sits off k = 0 and the ratio tends
// to sqrt(1 - b^2 / c^2), with c^2 = gamma^2 + Gamma^2 (1 + alpha)^2 and b = Gamma (1 - alpha).
TEST(Gap, IsingRatioOfTiltedCone) {
    const double c2 = 0.36 + 0.36 * 2.25, b = 0.6 * 0.5;
    const double want = std::sqrt(1 - b * b / c2);
    for (double d : {1e-3, 1e-4}) {
        const double g = excitation_gap(point(0.5, 1 + d)).gap;
        EXPECT_NEAR(g / (2 * d), want, 2 * d);
    }
}

TEST(Phase, Examples) {
    EXPECT_EQ(classify_phase(point(0.5, 0.5)), Phase::afm_I);
    EXPECT_EQ(classify_phase(point(0.5, 1.17)), Phase::pm_II);
    EXPECT_EQ(classify_phase(point(-0.5, 0.5)), Phase::spiral_III);
    EXPECT_EQ(classify_phase(point(0.5, 1.0)), Phase::cp1);
    EXPECT_EQ(classify_phase(point(-0.25, 0.5)), Phase::cp2);
    EXPECT_EQ(classify_phase(point(-0.5, std::sqrt(1.36))), Phase::cp3);
}

TEST(Phase, InvariantUnderGammaSign) {
    ParamSampler sample(7);
    for (int i = 0; i < 200; ++i) {
        ModelParams p = sample(10), q = p;
        q.gamma = -p.gamma;
        EXPECT_EQ(classify_phase(p), classify_phase(q));
    }
}

TEST(Phase, XYLimitWithoutGamma) {
    ModelParams p = point(0.3, 0.5);
    p.Gamma = 0;
    EXPECT_EQ(classify_phase(p), Phase::afm_I);
    p.h = 1.5;
    EXPECT_EQ(classify_phase(p), Phase::pm_II);
    p.h = 1.0;
    EXPECT_EQ(classify_phase(p), Phase::cp1);
    p.h = 0.5;
    p.gamma = 0;
    EXPECT_EQ(classify_phase(p), Phase::spiral_III);
}

TEST(CriticalSet, Values) {
    const CriticalSet cs = critical_set(point(-0.5, 0.3));
    EXPECT_DOUBLE_EQ(cs.h_c1, 1.0);
    ASSERT_TRUE(cs.alpha_c1);
    EXPECT_NEAR(*cs.alpha_c1, -0.25, 1e-15);
    ASSERT_TRUE(cs.h_c2);
    EXPECT_NEAR(*cs.h_c2, 1.16619, 1e-5);
    EXPECT_NEAR(*cs.h_c2, std::sqrt(1.36), 1e-14);
    for (double a : {0.5, 0.9}) EXPECT_DOUBLE_EQ(critical_set(point(a, 0.2)).h_c1, 1.0);
}

TEST(FermionPoints, Merge) {
    const auto pts = fermion_points(point(-0.5, std::sqrt(1.36)));
    ASSERT_TRUE(pts);
    EXPECT_NEAR((*pts)[0], (*pts)[1], 1e-6);
    EXPECT_NEAR(std::abs((*pts)[0]), std::acos(1 / std::sqrt(1.36)), 1e-6);
    EXPECT_NEAR(std::acos(1 / std::sqrt(1.36)), 0.5404, 1e-4);
}

TEST(FermionPoints, AbsentWhenGapped) { EXPECT_FALSE(fermion_points(point(0.5, 0.5))); }

TEST(FermionPoints, RootsOfDispersion) {
    const ModelParams p = point(-0.5, 0.5);
    const auto pts = fermion_points(p);
    ASSERT_TRUE(pts);
    EXPECT_NEAR(dispersion(p, (*pts)[0]), 0.0, 1e-10);
    EXPECT_NEAR(dispersion(p, (*pts)[1]), 0.0, 1e-10);
    EXPECT_NE((*pts)[0], (*pts)[1]);
}

TEST(Energy, XXThermodynamicLimit) {
    ModelParams p;
    p.gamma = p.Gamma = p.h = 0;
    EXPECT_NEAR(ground_state_energy_density(p, EnergyMode::thermodynamic), -2 / M_PI, 1e-9);
    p.N = 4000;
    EXPECT_NEAR(ground_state_energy_density(p, EnergyMode::finite_n), -2 / M_PI, 1e-6);
}

TEST(Energy, LargeField) {
    ModelParams p;
    p.gamma = p.Gamma = 0;
    p.h = 100;
    p.N = 100;
    EXPECT_NEAR(ground_state_energy_density(p, EnergyMode::finite_n), -100, 1.0);
}

TEST(Energy, ThermodynamicCloseToLargeN) {
    for (double a : {0.5, -0.5}) {
        ModelParams p = point(a, 0.5, 4000);
        EXPECT_NEAR(ground_state_energy_density(p, EnergyMode::thermodynamic),
                    ground_state_energy_density(p, EnergyMode::finite_n), 1e-5);
    }
}

TEST(Energy, MatchesExactDiagonalization) {
    const ModelParams p = point(0.5, 0.5, 8);
    const GroundState gs = ground_state(build_hamiltonian(p));
    EXPECT_NEAR(ground_state_energy_density(p, EnergyMode::finite_n_exact), gs.energy / 8, 1e-10);
}

TEST(Energy, ExactFillingMatchesEDOnRandomDraws) {
    ParamSampler sample(11);
    int checked = 0;
    for (int N : {8, 10, 12})
        for (int i = 0; i < 17; ++i) {
            const ModelParams p = sample(N);
            const GroundState gs = ground_state(build_hamiltonian(p));
            EXPECT_NEAR(fermion_ground_state(p, Filling::exact).energy, gs.energy, 1e-9) << N << " draw " << i;
            ++checked;
        }
    EXPECT_GE(checked, 50);
}

TEST(Derivative, QuadraticStencilExact) {
    auto f = [](double x) { return x * x; };
    EXPECT_NEAR(second_derivative(f, 0.7, 1e-3).value, 2.0, 1e-6);
    EXPECT_NEAR(second_derivative(f, 0.7, 0.5).value, 2.0, 1e-13);
    EXPECT_NEAR(first_derivative(f, 0.7, 0.5).value, 1.4, 1e-13);
    EXPECT_TRUE(second_derivative(f, 0.7, 1e-9).ill_conditioned);
    EXPECT_THROW(second_derivative(f, 0.7, 0.0), invalid_parameter);
}

TEST(Derivative, CurvatureGrowsWithN) {
    auto peak = [](int N) {
        double best = 0;
        for (double h = 0.98; h <= 1.02; h += 0.001)
            best = std::max(best, -energy_second_derivative(point(0.5, h, N), Param::h).value);
        return best;
    };
    EXPECT_GT(peak(800), peak(200));
}

TEST(Validation, RejectsBadParameters) {
    ModelParams p = point(0.5, 0.5);
    p.h = std::nan("");
    EXPECT_THROW(validate(p), invalid_parameter);
    p = point(0.5, 0.5, 9);
    EXPECT_THROW(spectrum(p, Sector::antiperiodic), invalid_parameter);
}
