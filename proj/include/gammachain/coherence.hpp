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

#ifndef GAMMACHAIN_COHERENCE_HPP
#define GAMMACHAIN_COHERENCE_HPP

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "correlations.hpp"
#include "error.hpp"
#include "model.hpp"

namespace gammachain {

using Qubit = Eigen::Matrix2cd;
using TwoQubit = Eigen::Matrix4cd;

/// Two-qubit X state in the basis |00>, |01>, |10>, |11> (0 = spin up, first qubit = left site):
///   [[u+, 0, 0, z1], [0, w+, z2, 0], [0, z2*, w-, 0], [z1*, 0, 0, u-]]
struct XState {
    double u_plus = 0, u_minus = 0, omega_plus = 0, omega_minus = 0;
    cplx z1, z2;

    TwoQubit matrix() const {
        TwoQubit m = TwoQubit::Zero();
        m(0, 0) = u_plus;
        m(1, 1) = omega_plus;
        m(2, 2) = omega_minus;
        m(3, 3) = u_minus;
        m(0, 3) = z1;
        m(3, 0) = std::conj(z1);
        m(1, 2) = z2;
        m(2, 1) = std::conj(z2);
        return m;
    }

    double trace() const { return u_plus + u_minus + omega_plus + omega_minus; }
};

/// Throws numeric_error if the X state is not positive to within tol.
inline void check_positive(const XState& s, double tol = 1e-9) {
    const bool ok = s.u_plus >= -tol && s.u_minus >= -tol && s.omega_plus >= -tol && s.omega_minus >= -tol &&
                    s.u_plus * s.u_minus - std::norm(s.z1) >= -tol &&
                    s.omega_plus * s.omega_minus - std::norm(s.z2) >= -tol;
    if (!ok) throw numeric_error("reduced density matrix is not positive semidefinite");
}

/// X state from the magnetization and raw two-point correlators of a translation-invariant state.
inline XState xstate_from_correlators(double mz, double xx, double yy, double zz, double xy, double yx) {
    XState s;
    s.u_plus = (1 + 2 * mz + zz) / 4;
    s.u_minus = (1 - 2 * mz + zz) / 4;
    s.omega_plus = s.omega_minus = (1 - zz) / 4;
    s.z1 = cplx(xx - yy, -xy - yx) / 4.0;
    s.z2 = cplx(xx + yy, xy - yx) / 4.0;
    return s;
}

inline XState reduced_density_matrix(const ContractionSet& cs, int r) {
    auto raw = [&](Pauli a, Pauli b) { return raw_two_point(cs, {a, b}, r).value; };
    XState s = xstate_from_correlators(magnetization_z(cs), raw(Pauli::x, Pauli::x), raw(Pauli::y, Pauli::y),
                                       raw(Pauli::z, Pauli::z), raw(Pauli::x, Pauli::y), raw(Pauli::y, Pauli::x));
    check_positive(s);
    return s;
}

inline XState reduced_density_matrix(const ModelParams& p, int r, Filling filling = Filling::antiperiodic) {
    return reduced_density_matrix(contractions(p, r, filling), r);
}

namespace detail {

/// Binary entropy of the probability pair (x, 1 - x), log base 2, 0 log 0 = 0.
inline double binary_entropy(double x) {
    double s = 0;
    for (double q : {x, 1 - x})
        if (q > 0) s -= q * std::log2(q);
    return s;
}

/// Bloch vector of a unit-trace qubit state.
inline std::array<double, 3> bloch(const Qubit& rho) {
    return {2 * rho(0, 1).real(), -2 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

}  // namespace detail

/// C = S(rho_d) - S(rho), rho_d the dephasing of rho in the eigenbasis of s^mu; log base 2.
inline double relative_entropy_coherence(const Qubit& rho, Pauli mu) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw invalid_parameter("qubit state is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > 1e-10) throw invalid_parameter("qubit state does not have unit trace");
    const auto n = detail::bloch(rho);
    double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if ((1 - len) / 2 < -1e-10) throw invalid_parameter("qubit state has a negative eigenvalue");
    len = std::min(len, 1.0);
    const double along = std::min(std::abs(n[static_cast<int>(mu)]), 1.0);
    return std::max(0.0, detail::binary_entropy((1 + along) / 2) - detail::binary_entropy((1 + len) / 2));
}

struct SteeringBranch {
    double p = 0;
    Qubit state = Qubit::Identity() / 2.0;
    bool degenerate = true;
};

/// branch[mu][a]: Alice projects her qubit onto the (-1)^a eigenstate of s^mu.
struct SteeringEnsemble {
    std::array<std::array<SteeringBranch, 2>, 3> branch;
};

inline Qubit pauli_matrix(Pauli mu) {
    Qubit s;
    switch (mu) {
        case Pauli::x: s << 0, 1, 1, 0; break;
        case Pauli::y: s << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case Pauli::z: s << 1, 0, 0, -1; break;
    }
    return s;
}

inline SteeringEnsemble steering_ensemble(const TwoQubit& rho) {
    SteeringEnsemble ens;
    for (Pauli mu : {Pauli::x, Pauli::y, Pauli::z}) {
        for (int a = 0; a < 2; ++a) {
            const Qubit P = (Qubit::Identity() + (a == 0 ? 1.0 : -1.0) * pauli_matrix(mu)) / 2.0;
            Qubit rb = Qubit::Zero();
            for (int b = 0; b < 2; ++b)
                for (int bp = 0; bp < 2; ++bp)
                    for (int x = 0; x < 2; ++x)
                        for (int xp = 0; xp < 2; ++xp) rb(b, bp) += P(xp, x) * rho(2 * x + b, 2 * xp + bp);
            SteeringBranch& br = ens.branch[static_cast<int>(mu)][a];
            br.p = rb.trace().real();
            br.degenerate = br.p <= 1e-14;
            if (!br.degenerate) br.state = rb / br.p;
        }
    }
    return ens;
}

inline SteeringEnsemble steering_ensemble(const XState& rho) { return steering_ensemble(rho.matrix()); }

/// 1/2 sum_{mu, a} p_{mu,a} sum_{nu != mu} C_nu(rho_{B | mu, a}); in [0, 2].
inline double steered_quantum_coherence(const TwoQubit& rho) {
    const SteeringEnsemble ens = steering_ensemble(rho);
    double total = 0;
    for (int mu = 0; mu < 3; ++mu)
        for (int a = 0; a < 2; ++a) {
            const SteeringBranch& br = ens.branch[mu][a];
            if (br.degenerate) continue;
            for (int nu = 0; nu < 3; ++nu)
                if (nu != mu) total += br.p * relative_entropy_coherence(br.state, static_cast<Pauli>(nu));
        }
    return total / 2;
}

inline double steered_quantum_coherence(const XState& rho) { return steered_quantum_coherence(rho.matrix()); }

inline double steered_quantum_coherence(const ModelParams& p, int r, Filling filling = Filling::antiperiodic) {
    return steered_quantum_coherence(reduced_density_matrix(p, r, filling));
}

/// d SQC / dh by central first difference.
inline Derivative coherence_susceptibility(const ModelParams& p, int r, double step = 1e-3,
                                           Filling filling = Filling::antiperiodic, bool richardson = false) {
    auto f = [&](double h) { return steered_quantum_coherence(with(p, Param::h, h), r, filling); };
    return first_derivative(f, p.h, step, richardson);
}

}  // namespace gammachain

#endif
