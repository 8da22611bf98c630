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

#ifndef GAMMACHAIN_ORACLE_HPP
#define GAMMACHAIN_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "coherence.hpp"
#include "correlations.hpp"
#include "ed.hpp"
#include "model.hpp"

namespace gammachain {

/// Largest deviations between the free-fermion solution (exact filling) and exact
/// diagonalization for one parameter point, over r = 1..r_max.
struct OracleReport {
    ModelParams params;
    double ed_gap = 0;
    double energy = 0;       // |E_ff - E_ed|
    double magnetization = 0;
    double correlator = 0;   // all five connected components
    double rdm = 0;          // entrywise
    double sqc = 0;
};

inline OracleReport oracle_compare(const ModelParams& p, int r_max = 3) {
    OracleReport rep;
    rep.params = p;
    const GroundState gs = ground_state(build_hamiltonian(p));
    rep.ed_gap = gs.gap;
    const FermionState st = fermion_ground_state(p, Filling::exact);
    rep.energy = std::abs(st.energy - gs.energy);
    if (gs.degenerate) return rep;
    const ContractionSet cs(st, r_max);
    const double mz_ed = ed_expectation(gs, Pauli::z, 0);
    const double mz = magnetization_z(cs);
    rep.magnetization = std::abs(mz - mz_ed);
    for (int r = 1; r <= r_max; ++r) {
        for (const Component& c : all_components()) {
            double ed = ed_correlator(gs, c.a, c.b, 0, r);
            if (c.a == Pauli::z) ed -= mz_ed * mz_ed;
            rep.correlator = std::max(rep.correlator, std::abs(two_point(cs, c, r).value - ed));
        }
        const TwoQubit rho_ed = ed_rdm(gs, 0, r);
        const XState xs = reduced_density_matrix(cs, r);
        rep.rdm = std::max(rep.rdm, (rho_ed - xs.matrix()).cwiseAbs().maxCoeff());
        rep.sqc = std::max(rep.sqc, std::abs(steered_quantum_coherence(rho_ed) - steered_quantum_coherence(xs)));
    }
    return rep;
}

/// Deterministic random chain parameters: gamma, Gamma, alpha uniform in [-1, 1],
/// h uniform in [0, 2], J = 1.
class ParamSampler {
public:
    explicit ParamSampler(std::uint64_t seed) : rng_(seed) {}

    ModelParams operator()(int N) {
        std::uniform_real_distribution<double> sym(-1, 1), field(0, 2);
        ModelParams p;
        p.N = N;
        p.gamma = sym(rng_);
        p.Gamma = sym(rng_);
        p.alpha = sym(rng_);
        p.h = field(rng_);
        return p;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace gammachain

#endif
