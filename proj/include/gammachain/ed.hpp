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

#ifndef GAMMACHAIN_ED_HPP
#define GAMMACHAIN_ED_HPP

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "coherence.hpp"
#include "correlations.hpp"
#include "error.hpp"
#include "model.hpp"

namespace gammachain {

/// Spin Hamiltonian on a ring in the computational basis. Bit j of a basis index is
/// site j, with 1 meaning spin down.
struct SpinHamiltonian {
    int N = 0;
    Eigen::SparseMatrix<cplx> matrix;

    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix); }
};

inline SpinHamiltonian build_hamiltonian(const ModelParams& p) {
    for (double v : {p.J, p.gamma, p.Gamma, p.alpha, p.h})
        if (!std::isfinite(v)) throw invalid_parameter("model parameters must be finite");
    if (p.N < 3 || p.N > 12) throw invalid_parameter("exact diagonalization needs 3 <= N <= 12");
    const int N = p.N;
    const std::uint32_t dim = 1u << N;
    const cplx I(0, 1);
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(static_cast<std::size_t>(dim) * (N + 1));
    for (std::uint32_t s = 0; s < dim; ++s) {
        double diag = 0;
        for (int j = 0; j < N; ++j) diag += p.h * (((s >> j) & 1u) ? -1.0 : 1.0);
        trip.emplace_back(s, s, diag);
        for (int j = 0; j < N; ++j) {
            const int l = (j + 1) % N;
            const double sj = ((s >> j) & 1u) ? -1.0 : 1.0;
            const double sl = ((s >> l) & 1u) ? -1.0 : 1.0;
            // sy|b> = i (-1)^b |1-b>; every bond term flips both spins.
            const cplx amp = p.J * (1 + p.gamma) / 2 - p.J * (1 - p.gamma) / 2 * sj * sl + p.Gamma * I * sl +
                             p.Gamma * p.alpha * I * sj;
            const std::uint32_t t = s ^ (1u << j) ^ (1u << l);
            trip.emplace_back(t, s, amp);
        }
    }
    SpinHamiltonian H;
    H.N = N;
    H.matrix.resize(dim, dim);
    H.matrix.setFromTriplets(trip.begin(), trip.end());
    return H;
}

struct GroundState {
    int N = 0;
    double energy = 0;
    Eigen::VectorXcd vector;
    double gap = 0;                // E1 - E0 within the searched space
    bool degenerate = false;       // gap below 1e-8
    std::optional<int> parity;     // number of down spins mod 2, if resolved
    double residual = 0;           // ||H v - E v||
};

struct EdOptions {
    std::optional<int> parity;     // restrict to a fermion-parity sector
    int dense_limit = 256;         // dense eigensolver up to this (sector) dimension
};

namespace detail {

inline void fix_phase(Eigen::VectorXcd& v) {
    const double cut = 1e-10 * v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > cut) {
            v *= std::conj(v[i]) / std::abs(v[i]);
            return;
        }
}

inline std::vector<std::uint32_t> sector_states(int N, std::optional<int> parity) {
    std::vector<std::uint32_t> idx;
    for (std::uint32_t s = 0; s < (1u << N); ++s)
        if (!parity || static_cast<int>(std::popcount(s) % 2) == *parity) idx.push_back(s);
    return idx;
}

/// Lowest eigenpair of a Hermitian sparse matrix restricted to the basis states with
/// mask[i] set and orthogonal to `deflate`. Lanczos with full reorthogonalization and
/// restarts from the current Ritz vector.
inline std::pair<double, Eigen::VectorXcd> lanczos_lowest(const Eigen::SparseMatrix<cplx>& H,
                                                          const std::vector<char>& mask,
                                                          const std::vector<Eigen::VectorXcd>& deflate,
                                                          std::uint64_t seed) {
    const Eigen::Index dim = H.rows();
    auto project = [&](Eigen::VectorXcd& w) {
        for (Eigen::Index i = 0; i < dim; ++i)
            if (!mask[i]) w[i] = 0;
        for (const auto& d : deflate) w -= d * d.dot(w);
    };
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1, 1);
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = cplx(U(rng), U(rng));
    project(v);
    v.normalize();
    const int max_krylov = static_cast<int>(std::min<Eigen::Index>(dim, 300));
    double energy = 0;
    for (int restart = 0; restart < 20; ++restart) {
        std::vector<Eigen::VectorXcd> V{v};
        std::vector<double> a, b;
        Eigen::VectorXd ritz;
        bool done = false;
        for (int j = 0; j < max_krylov; ++j) {
            Eigen::VectorXcd w = H * V[j];
            a.push_back(V[j].dot(w).real());
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& q : V) w -= q * q.dot(w);
                project(w);
            }
            const double beta = w.norm();
            const int m = j + 1;
            if (m % 10 == 0 || beta < 1e-12 || m == max_krylov) {
                Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
                for (int i = 0; i < m; ++i) T(i, i) = a[i];
                for (int i = 0; i + 1 < m; ++i) T(i, i + 1) = T(i + 1, i) = b[i];
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
                energy = es.eigenvalues()[0];
                ritz = es.eigenvectors().col(0);
                if (beta * std::abs(ritz[m - 1]) < 1e-12 * std::max(1.0, std::abs(energy)) || beta < 1e-12) {
                    done = true;
                    break;
                }
            }
            if (m == max_krylov) break;
            b.push_back(beta);
            V.push_back(w / beta);
        }
        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(dim);
        for (Eigen::Index i = 0; i < ritz.size(); ++i) x += ritz[i] * V[i];
        project(x);
        x.normalize();
        v = x;
        if (done) {
            const double res = (H * v - energy * v).norm();
            if (res <= 1e-10) return {energy, v};
        }
    }
    throw numeric_error("Lanczos did not converge");
}

}  // namespace detail

/// Lowest eigenpair of a dense Hermitian matrix.
inline GroundState ground_state(const Eigen::MatrixXcd& H) {
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw invalid_parameter("ground_state: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    if (es.info() != Eigen::Success) throw numeric_error("dense eigensolver failed");
    GroundState gs;
    gs.N = static_cast<int>(std::lround(std::log2(static_cast<double>(H.rows()))));
    gs.energy = es.eigenvalues()[0];
    gs.vector = es.eigenvectors().col(0);
    detail::fix_phase(gs.vector);
    gs.gap = H.rows() > 1 ? es.eigenvalues()[1] - gs.energy : 0.0;
    gs.degenerate = H.rows() > 1 && gs.gap < 1e-8;
    gs.residual = (H * gs.vector - gs.energy * gs.vector).norm();
    return gs;
}

/// Ground state of a spin Hamiltonian, optionally within one fermion-parity sector.
inline GroundState ground_state(const SpinHamiltonian& H, const EdOptions& opt = {}) {
    const std::vector<std::uint32_t> idx = detail::sector_states(H.N, opt.parity);
    const Eigen::Index dim = H.matrix.rows();
    const Eigen::Index n = static_cast<Eigen::Index>(idx.size());
    GroundState gs;
    gs.N = H.N;
    gs.parity = opt.parity;
    gs.vector = Eigen::VectorXcd::Zero(dim);
    if (n <= opt.dense_limit) {
        const Eigen::MatrixXcd full = H.dense();
        Eigen::MatrixXcd sub(n, n);
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = 0; b < n; ++b) sub(a, b) = full(idx[a], idx[b]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sub);
        if (es.info() != Eigen::Success) throw numeric_error("dense eigensolver failed");
        gs.energy = es.eigenvalues()[0];
        gs.gap = n > 1 ? es.eigenvalues()[1] - gs.energy : 0.0;
        for (Eigen::Index a = 0; a < n; ++a) gs.vector[idx[a]] = es.eigenvectors()(a, 0);
    } else {
        std::vector<char> mask(dim, 0);
        for (auto s : idx) mask[s] = 1;
        auto [e0, v0] = detail::lanczos_lowest(H.matrix, mask, {}, 0x9e3779b97f4a7c15ull);
        auto [e1, v1] = detail::lanczos_lowest(H.matrix, mask, {v0}, 0x2545f4914f6cdd1dull);
        gs.energy = e0;
        gs.gap = e1 - e0;
        gs.vector = v0;
    }
    detail::fix_phase(gs.vector);
    gs.degenerate = gs.gap < 1e-8;
    gs.residual = (H.matrix * gs.vector - gs.energy * gs.vector).norm();
    if (gs.residual > 1e-10) throw numeric_error("ground state residual " + std::to_string(gs.residual));
    return gs;
}

namespace detail {

/// sigma^a at `site` applied to basis state s: returns (image, amplitude).
inline std::pair<std::uint32_t, cplx> apply_pauli(Pauli a, int site, std::uint32_t s) {
    const bool down = (s >> site) & 1u;
    switch (a) {
        case Pauli::x: return {s ^ (1u << site), 1.0};
        case Pauli::y: return {s ^ (1u << site), down ? cplx(0, -1) : cplx(0, 1)};
        case Pauli::z: return {s, down ? -1.0 : 1.0};
    }
    return {s, 0.0};
}

inline void require_unique(const GroundState& gs) {
    if (gs.degenerate && !gs.parity)
        throw degeneracy_error("degenerate ground state: pick a parity sector before measuring");
}

inline double real_expectation(cplx v) {
    if (std::abs(v.imag()) > 1e-10) throw numeric_error("expectation value is not real");
    return v.real();
}

}  // namespace detail

/// <s^a_i>.
inline double ed_expectation(const GroundState& gs, Pauli a, int i) {
    detail::require_unique(gs);
    if (i < 0 || i >= gs.N) throw invalid_parameter("site index out of range");
    cplx acc = 0;
    for (Eigen::Index s = 0; s < gs.vector.size(); ++s) {
        auto [t, amp] = detail::apply_pauli(a, i, static_cast<std::uint32_t>(s));
        acc += std::conj(gs.vector[t]) * amp * gs.vector[s];
    }
    return detail::real_expectation(acc);
}

/// Raw <s^a_i s^b_j>, i != j.
inline double ed_correlator(const GroundState& gs, Pauli a, Pauli b, int i, int j) {
    detail::require_unique(gs);
    if (i < 0 || j < 0 || i >= gs.N || j >= gs.N || i == j) throw invalid_parameter("invalid site pair");
    cplx acc = 0;
    for (Eigen::Index s = 0; s < gs.vector.size(); ++s) {
        auto [t1, a1] = detail::apply_pauli(b, j, static_cast<std::uint32_t>(s));
        auto [t2, a2] = detail::apply_pauli(a, i, t1);
        acc += std::conj(gs.vector[t2]) * a1 * a2 * gs.vector[s];
    }
    return detail::real_expectation(acc);
}

/// Reduced density matrix of sites (i, j), basis index 2 b_i + b_j with b = 1 for spin down.
inline TwoQubit ed_rdm(const GroundState& gs, int i, int j) {
    detail::require_unique(gs);
    if (i < 0 || j < 0 || i >= gs.N || j >= gs.N || i == j) throw invalid_parameter("invalid site pair");
    TwoQubit rho = TwoQubit::Zero();
    const std::uint32_t clear = ~((1u << i) | (1u << j));
    for (Eigen::Index s = 0; s < gs.vector.size(); ++s) {
        const std::uint32_t us = static_cast<std::uint32_t>(s);
        const int row = 2 * ((us >> i) & 1u) + ((us >> j) & 1u);
        const std::uint32_t rest = us & clear;
        for (int col = 0; col < 4; ++col) {
            const std::uint32_t t = rest | ((col >> 1) << i) | ((col & 1) << j);
            rho(row, col) += gs.vector[s] * std::conj(gs.vector[t]);
        }
    }
    return rho;
}

inline double ed_sqc(const GroundState& gs, int i, int j) { return steered_quantum_coherence(ed_rdm(gs, i, j)); }

}  // namespace gammachain

#endif
