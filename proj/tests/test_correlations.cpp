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

#include <gtest/gtest.h>

#include <gammachain/correlations.hpp>
#include <gammachain/ed.hpp>
#include <gammachain/oracle.hpp>

using namespace gammachain;
using M = Majorana;

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

// <psi| s^{a1}_{i1} ... s^{an}_{in} |psi>, operators applied right to left.
cplx ed_string(const GroundState& gs, const std::vector<std::pair<Pauli, int>>& ops) {
    cplx acc = 0;
    for (Eigen::Index s = 0; s < gs.vector.size(); ++s) {
        std::uint32_t t = static_cast<std::uint32_t>(s);
        cplx amp = 1;
        for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
            auto [u, a] = detail::apply_pauli(it->first, it->second, t);
            t = u;
            amp *= a;
        }
        acc += std::conj(gs.vector[t]) * amp * gs.vector[s];
    }
    return acc;
}

}  // namespace

TEST(Contractions, AnticommutatorIdentities) {
    for (const ModelParams& p : {point(0.5, 0.5, 200), point(-0.5, 0.5, 200), point(0.5, 1.3, 64)}) {
        const ContractionSet cs = contractions(p, 8);
        const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(9, 9);
        EXPECT_LE((cs.S_AA() + cs.S_AA().transpose() - 2.0 * I).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LE((cs.S_BB() + cs.S_BB().transpose() + 2.0 * I).cwiseAbs().maxCoeff(), 1e-12);
        const Eigen::MatrixXcd AB = cs.matrix(M::A, M::B);
        EXPECT_LE((cs.S_BA() + AB.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Contractions, XYLimitIsDiagonal) {
    ModelParams p = point(0.3, 0.4, 300);
    p.Gamma = 0;
    const ContractionSet cs = contractions(p, 10);
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(11, 11);
    EXPECT_LE((cs.S_AA() - I).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((cs.S_BB() + I).cwiseAbs().maxCoeff(), 1e-12);
}

// Same-type contractions off the diagonal vanish only when the symmetric off-diagonal part
// Gamma (1 + alpha) does; at a generic gapped point they are small but finite.
TEST(Contractions, SameTypeOffDiagonal) {
    ModelParams p = point(-1.0, 0.5, 400);
    p.Gamma = 0.1;
    ASSERT_EQ(classify_phase(p), Phase::afm_I);
    ContractionSet cs = contractions(p, 6);
    Eigen::MatrixXcd off = cs.S_AA() - Eigen::MatrixXcd::Identity(7, 7);
    EXPECT_LE(off.cwiseAbs().maxCoeff(), 1e-12);

    cs = contractions(point(0.5, 0.5, 400), 6);
    off = cs.S_AA() - Eigen::MatrixXcd::Identity(7, 7);
    EXPECT_GT(off.cwiseAbs().maxCoeff(), 1e-3);

    cs = contractions(point(-0.5, 0.5, 400), 6);
    off = cs.S_AA() - Eigen::MatrixXcd::Identity(7, 7);
    EXPECT_GT(off.cwiseAbs().maxCoeff(), 1e-3);
}

TEST(Contractions, SpiralMatchesExactDiagonalization) {
    const ModelParams p = point(-0.5, 0.5, 12);
    const GroundState gs = ground_state(build_hamiltonian(p));
    ASSERT_FALSE(gs.degenerate);
    const ContractionSet cs = contractions(p, 3, Filling::exact);
    // A_0 A_1 = sx_0 (sz_0 sx_1) = -i sy_0 sx_1
    EXPECT_LE(std::abs(cs(M::A, 0, M::A, 1) - cplx(0, -1) * ed_string(gs, {{Pauli::y, 0}, {Pauli::x, 1}})), 1e-9);
    // <B_0 B_1> = <(-i sy_0)(-i sz_0 sy_1)> = -<sy_0 sz_0 sy_1> = -i <sx_0 sy_1>
    EXPECT_LE(std::abs(cs(M::B, 0, M::B, 1) - cplx(0, -1) * ed_string(gs, {{Pauli::x, 0}, {Pauli::y, 1}})), 1e-9);
}

TEST(Contractions, RejectsOutsideWindow) {
    const ContractionSet cs = contractions(point(0.5, 0.5, 100), 3);
    EXPECT_THROW(cs(M::A, 0, M::A, 10), invalid_parameter);
    EXPECT_THROW(contractions(point(0.5, 0.5, 8), 8), invalid_parameter);
    EXPECT_THROW(two_point(cs, {Pauli::x, Pauli::x}, 4), invalid_parameter);
}

TEST(Wick, PairingReducesToContractions) {
    const ContractionSet cs = contractions(point(-0.5, 0.7, 200), 4);
    const MajoranaOp a{M::B, 0}, b{M::A, 1}, c{M::B, 2}, d{M::A, 3};
    EXPECT_LE(std::abs(wick(cs, {a, b}) - cs(a, b)), 1e-15);
    const cplx four = cs(a, b) * cs(c, d) - cs(a, c) * cs(b, d) + cs(a, d) * cs(b, c);
    EXPECT_LE(std::abs(wick(cs, {a, b, c, d}) - four), 1e-14);
}

TEST(TwoPoint, MatchesExactDiagonalizationAtGappedPoint) {
    const ModelParams p = point(0.5, 0.5, 10);
    const GroundState gs = ground_state(build_hamiltonian(p));
    const ContractionSet cs = contractions(p, 3, Filling::exact);
    const double mz = ed_expectation(gs, Pauli::z, 0);
    for (int r = 1; r <= 3; ++r)
        for (const Component& c : all_components()) {
            double ed = ed_correlator(gs, c.a, c.b, 0, r);
            if (c.a == Pauli::z) ed -= mz * mz;
            EXPECT_NEAR(two_point(cs, c, r).value, ed, 1e-8) << to_string(c) << " r=" << r;
        }
}

TEST(TwoPoint, CrossComponentsCoincideWhenGapped) {
    ParamSampler sample(21);
    int used = 0;
    while (used < 20) {
        ModelParams p = sample(400);
        const Phase ph = classify_phase(p);
        if (ph != Phase::afm_I && ph != Phase::pm_II) continue;
        if (excitation_gap(p).gap < 0.05) continue;
        ++used;
        const ContractionSet cs = contractions(p, 4);
        for (int r = 1; r <= 4; ++r) {
            EXPECT_NEAR(two_point(cs, {Pauli::x, Pauli::y}, r).value, two_point(cs, {Pauli::y, Pauli::x}, r).value, 1e-10);
            EXPECT_NEAR(chiral_order(cs, r), 0.0, 1e-10);
        }
    }
}

TEST(TwoPoint, PolarizedLimit) {
    for (double h : {1e3, 1e5}) {
        const ContractionSet cs = contractions(point(0.5, h, 100), 3);
        EXPECT_NEAR(magnetization_z(cs), -1.0, 1.0 / h);
        for (int r = 1; r <= 3; ++r)
            for (const Component& c : all_components()) EXPECT_NEAR(two_point(cs, c, r).value, 0.0, 1.0 / h);
    }
}

TEST(TwoPoint, HalfFillingWithoutField) {
    ModelParams p = point(0.5, 0.0, 200);
    p.Gamma = 0;
    EXPECT_NEAR(magnetization_z(p), 0.0, 1e-12);
}

TEST(TwoPoint, RealOnRandomDraws) {
    ParamSampler sample(22);
    for (int i = 0; i < 30; ++i) {
        const ContractionSet cs = contractions(sample(300), 5);
        for (int r = 1; r <= 5; ++r)
            for (const Component& c : all_components()) {
                const CorrelatorResult res = raw_two_point(cs, c, r);
                EXPECT_LE(res.imag_residue, 1e-10);
            }
    }
}

TEST(TwoPoint, DecaysInParamagnet) {
    const ContractionSet cs = contractions(point(0.5, 1.5, 2000), 40);
    for (const Component& c : all_components()) {
        double prev = 0;
        for (int s = 1; s <= 5; ++s) prev = std::max(prev, std::abs(two_point(cs, c, s).value));
        for (int r = 10; r <= 40; r += 5) {
            double env = 0;
            for (int s = r - 4; s <= r; ++s) env = std::max(env, std::abs(two_point(cs, c, s).value));
            EXPECT_LT(env, prev) << to_string(c) << " r=" << r;
            prev = env;
        }
        EXPECT_LT(std::abs(two_point(cs, c, 40).value), 1e-6) << to_string(c);
    }
}

TEST(Toeplitz, AgreesWithPfaffianWithoutGamma) {
    for (double h : {0.4, 1.5}) {
        ModelParams p = point(0.3, h, 1000);
        p.Gamma = 0;
        p.gamma = 0.5;
        const ContractionSet cs = contractions(p, 20);
        for (int r = 1; r <= 20; ++r)
            for (Component c : {Component{Pauli::x, Pauli::x}, Component{Pauli::y, Pauli::y}})
                EXPECT_NEAR(toeplitz_two_point(cs, c, r), raw_two_point(cs, c, r).value, 1e-10)
                    << to_string(c) << " h=" << h << " r=" << r;
    }
}

TEST(Toeplitz, RequiresDiagonalContractions) {
    const ContractionSet cs = contractions(point(0.5, 0.5, 200), 4);
    EXPECT_THROW(toeplitz_two_point(cs, {Pauli::x, Pauli::x}, 2), invalid_parameter);
}

TEST(Chiral, SpiralMatchesExactDiagonalization) {
    const ModelParams p = point(-0.5, 0.5, 12);
    const GroundState gs = ground_state(build_hamiltonian(p));
    const double ed = std::abs(ed_correlator(gs, Pauli::x, Pauli::y, 0, 1)) - std::abs(ed_correlator(gs, Pauli::y, Pauli::x, 0, 1));
    const double ff = chiral_order(p, 1, Filling::exact);
    EXPECT_GT(std::abs(ff), 1e-3);
    EXPECT_NEAR(ff, ed, 1e-6);
}

TEST(Dimer, RawNearestPairIsSingleContraction) {
    const ModelParams p = point(-0.5, 0.5, 12);
    const GroundState gs = ground_state(build_hamiltonian(p));
    const ContractionSet cs = contractions(p, 3, Filling::exact);
    // k_0 k_1 = (sx_0 sy_1)(sx_1 sy_2)
    const cplx raw = ed_string(gs, {{Pauli::x, 0}, {Pauli::y, 1}, {Pauli::x, 1}, {Pauli::y, 2}});
    EXPECT_LE(std::abs(raw - cs(M::B, 0, M::B, 2)), 1e-9);
}

TEST(Dimer, MatchesExactDiagonalization) {
    for (const ModelParams& p : {point(-0.5, 0.5, 12), point(0.5, 0.5, 12)}) {
        const GroundState gs = ground_state(build_hamiltonian(p));
        const ContractionSet cs = contractions(p, 5, Filling::exact);
        const cplx k = ed_string(gs, {{Pauli::x, 0}, {Pauli::y, 1}});
        for (int r = 1; r <= 4; ++r) {
            const cplx kk = ed_string(gs, {{Pauli::x, 0}, {Pauli::y, 1}, {Pauli::x, r}, {Pauli::y, r + 1}});
            EXPECT_LE(std::abs(dimer_correlation(cs, r) - (kk - k * k)), 1e-9) << "r=" << r;
        }
    }
}

TEST(Dimer, RealBeyondNearestPair) {
    const ContractionSet cs = contractions(point(-0.5, 0.5, 400), 8);
    for (int r = 2; r <= 6; ++r) EXPECT_LE(std::abs(dimer_correlation(cs, r).imag()), 1e-12);
}

TEST(Dimer, DecaysExponentiallyWhenGapped) {
    const ContractionSet cs = contractions(point(0.5, 0.5, 400), 12);
    for (int r = 2; r <= 10; r += 2) EXPECT_LT(std::abs(dimer_correlation(cs, r + 2)), 0.1 * std::abs(dimer_correlation(cs, r)));
}

TEST(Dimer, DecaysFasterThanChiralPairInSpiral) {
    const ContractionSet cs = contractions(point(-0.5, 0.5, 2000), 8);
    const double d1 = std::abs(dimer_correlation(cs, 1));
    const double g1 = std::abs(two_point(cs, {Pauli::x, Pauli::y}, 1).value);
    for (int r = 3; r <= 6; ++r) {
        double g = 0, d = 0;
        for (int s = r; s <= r + 1; ++s) {
            d = std::max(d, std::abs(dimer_correlation(cs, s)));
            g = std::max(g, std::abs(two_point(cs, {Pauli::x, Pauli::y}, s).value));
        }
        EXPECT_LT(d / d1, g / g1) << "r=" << r;
    }
}
