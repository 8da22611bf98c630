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

#ifndef GAMMACHAIN_COUPLINGS_HPP
#define GAMMACHAIN_COUPLINGS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "model.hpp"

namespace gammachain {

struct CavityMode {
    double detuning = 0;     // Delta_k
    double kappa = 0;        // photon loss rate
    std::vector<cplx> G;     // coupling G_k(r_j) per site
};

/// Far-detuned atoms on sites j, each driven by two lasers (Omega1, Omega2) and coupled
/// to a set of cavity modes; all frequencies in the same angular units.
struct AtomLightParams {
    std::vector<cplx> omega1, omega2;
    double delta1 = 0, delta2 = 0;  // one-photon detunings
    double delta = 0;               // two-photon detuning
    std::vector<CavityMode> modes;
    double occupation_s = 0.5;      // mean <sigma^ss> in the dressed mode detuning
    double occupation_g = 0.5;      // mean <sigma^gg>
    double ratio_threshold = 10;    // required |Delta_{1,2}| / max coupling
    bool periodic = false;          // ring geometry for the chain reduction
};

inline int site_count(const AtomLightParams& p) { return static_cast<int>(p.omega1.size()); }

inline void validate(const AtomLightParams& p) {
    const std::size_t n = p.omega1.size();
    if (n < 2) throw invalid_parameter("atom-light model needs at least 2 sites");
    if (p.omega2.size() != n) throw invalid_parameter("omega1 and omega2 must have one entry per site");
    double scale = 0;
    for (std::size_t j = 0; j < n; ++j) scale = std::max({scale, std::abs(p.omega1[j]), std::abs(p.omega2[j])});
    for (const CavityMode& m : p.modes) {
        if (m.G.size() != n) throw invalid_parameter("each mode needs one coupling per site");
        for (const cplx& g : m.G) scale = std::max(scale, std::abs(g));
    }
    const double d = std::min(std::abs(p.delta1), std::abs(p.delta2));
    if (!(d >= p.ratio_threshold * scale))
        throw invalid_parameter("detunings are not large compared with the couplings (ratio " +
                                std::to_string(scale > 0 ? d / scale : 0.0) + ")");
}

/// Delta_k + i kappa - sum_j |G_k(r_j)|^2 (n_s / Delta1 + n_g / Delta2).
inline cplx dressed_detuning(const AtomLightParams& p, const CavityMode& m) {
    double shift = 0;
    for (const cplx& g : m.G) shift += std::norm(g) * (p.occupation_s / p.delta1 + p.occupation_g / p.delta2);
    const cplx d(m.detuning - shift, m.kappa);
    if (!(std::abs(d) > 1e-9 * std::max(std::abs(m.detuning), std::abs(shift))))
        throw numeric_error("cavity mode is resonant with the dressed atoms");
    return d;
}

struct Kernels {
    cplx lambda0, lambda1;
};

/// Lambda0 = eta11 + eta22 and Lambda1 = eta12 + eta21 for the ordered pair (i, j).
inline Kernels lambda_kernels(const AtomLightParams& p, int i, int j) {
    validate(p);
    const int n = site_count(p);
    if (i < 0 || j < 0 || i >= n || j >= n) throw invalid_parameter("site index out of range");
    const cplx o1i = p.omega1[i], o1j = p.omega1[j], o2i = p.omega2[i], o2j = p.omega2[j];
    const double d1 = p.delta1, d2 = p.delta2;
    Kernels k{0.0, 0.0};
    for (const CavityMode& m : p.modes) {
        const cplx dt = dressed_detuning(p, m);
        const cplx gi = m.G[i], gj = m.G[j];
        const cplx eta11 = std::conj(o1i) * o1j * gi * std::conj(gj) / (d1 * d1 * dt);
        const cplx eta12 = std::conj(o1i) * o2j * gi * std::conj(gj) / (d1 * d2 * dt);
        const cplx eta21 = o2i * std::conj(o1j) * std::conj(gi) * gj / (d1 * d2 * std::conj(dt));
        const cplx eta22 = o2i * std::conj(o2j) * std::conj(gi) * gj / (d2 * d2 * std::conj(dt));
        k.lambda0 += eta11 + eta22;
        k.lambda1 += eta12 + eta21;
    }
    return k;
}

/// Coupling matrices per ordered site pair, Hermitized: Jx, Jy, JSO symmetric and JDM
/// antisymmetric. anti_hermitian_residual is the largest part removed by that step
/// (zero for lossless modes).
struct SpinCouplings {
    Eigen::MatrixXd Jx, Jy, JDM, JSO;
    Eigen::VectorXd hz;
    bool periodic = false;
    double anti_hermitian_residual = 0;

    int sites() const { return static_cast<int>(hz.size()); }

    /// K[(i,a),(j,b)] = coefficient of s^a_i s^b_j, a, b in {x, y}.
    Eigen::MatrixXd exchange_matrix() const {
        const int n = sites();
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(2 * n, 2 * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                K(2 * i, 2 * j) = Jx(i, j);
                K(2 * i + 1, 2 * j + 1) = Jy(i, j);
                K(2 * i, 2 * j + 1) = JDM(i, j) + JSO(i, j);
                K(2 * i + 1, 2 * j) = JSO(i, j) - JDM(i, j);
            }
        return K;
    }
};

inline SpinCouplings spin_couplings(const AtomLightParams& p) {
    validate(p);
    const int n = site_count(p);
    SpinCouplings c;
    c.periodic = p.periodic;
    c.Jx = c.Jy = c.JDM = c.JSO = Eigen::MatrixXd::Zero(n, n);
    c.hz.resize(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const Kernels k = lambda_kernels(p, i, j);
            c.Jx(i, j) = 2 * (k.lambda0.real() + k.lambda1.real());
            c.Jy(i, j) = 2 * (k.lambda0.real() - k.lambda1.real());
            c.JDM(i, j) = 2 * k.lambda0.imag();
            c.JSO(i, j) = -2 * k.lambda1.imag();
        }
    auto sym = [&](Eigen::MatrixXd& M, double s) {
        const Eigen::MatrixXd H = 0.5 * (M + s * M.transpose());
        c.anti_hermitian_residual = std::max(c.anti_hermitian_residual, (M - H).cwiseAbs().maxCoeff());
        M = H;
    };
    sym(c.Jx, 1);
    sym(c.Jy, 1);
    sym(c.JSO, 1);
    sym(c.JDM, -1);
    for (int j = 0; j < n; ++j)
        c.hz[j] = p.delta / 2 + std::norm(p.omega1[j]) / p.delta1 - std::norm(p.omega2[j]) / p.delta2;
    return c;
}

inline int site_distance(const SpinCouplings& c, int i, int j) {
    const int d = std::abs(i - j);
    return c.periodic ? std::min(d, c.sites() - d) : d;
}

struct ChainReduction {
    ModelParams params;
    bool alpha_defined = true;   // false when Gamma = 0
    double beyond_nn_ratio = 0;  // largest beyond-nearest-neighbour coupling / J
};

/// Uniform nearest-neighbour couplings to chain parameters, read off the bonds (j, j+1):
/// J = Jx + Jy, gamma = (Jx - Jy)/J, Gamma = JDM + JSO, alpha = (JSO - JDM)/Gamma.
inline ChainReduction chain_params_from_couplings(const SpinCouplings& c, double threshold = 0.01) {
    const int n = c.sites();
    if (n < 2) throw invalid_parameter("need at least 2 sites");
    const int bonds = c.periodic ? n : n - 1;
    auto bond = [&](const Eigen::MatrixXd& M, int j) { return M(j, (j + 1) % n); };
    const double jx = bond(c.Jx, 0), jy = bond(c.Jy, 0), dm = bond(c.JDM, 0), so = bond(c.JSO, 0);
    const double scale = std::max({std::abs(jx), std::abs(jy), std::abs(dm), std::abs(so), std::abs(c.hz[0])});
    const double tol = 1e-9 * std::max(scale, 1e-300);
    for (int j = 0; j < bonds; ++j)
        if (std::abs(bond(c.Jx, j) - jx) > tol || std::abs(bond(c.Jy, j) - jy) > tol ||
            std::abs(bond(c.JDM, j) - dm) > tol || std::abs(bond(c.JSO, j) - so) > tol)
            throw not_reducible("nearest-neighbour couplings are not uniform");
    for (int j = 0; j < n; ++j)
        if (std::abs(c.hz[j] - c.hz[0]) > tol) throw not_reducible("field is not uniform");
    ChainReduction red;
    const double J = jx + jy;
    if (!(J > 0)) throw not_reducible("reduced exchange J = Jx + Jy must be positive");
    double far = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (site_distance(c, i, j) > 1)
                far = std::max({far, std::abs(c.Jx(i, j)), std::abs(c.Jy(i, j)), std::abs(c.JDM(i, j)),
                                std::abs(c.JSO(i, j))});
    red.beyond_nn_ratio = far / J;
    if (red.beyond_nn_ratio > threshold)
        throw not_reducible("beyond-nearest-neighbour couplings reach " + std::to_string(red.beyond_nn_ratio) + " of J");
    red.params.J = J;
    red.params.gamma = (jx - jy) / J;
    red.params.Gamma = dm + so;
    red.alpha_defined = red.params.Gamma != 0;
    red.params.alpha = red.alpha_defined ? (so - dm) / red.params.Gamma : 0.0;
    red.params.h = c.hz[0];
    red.params.N = n;
    return red;
}

/// Inverse of chain_params_from_couplings on a ring of p.N sites.
inline SpinCouplings couplings_from_chain_params(const ModelParams& p) {
    validate_couplings(p);
    const int n = p.N;
    if (n < 3) throw invalid_parameter("ring needs at least 3 sites");
    SpinCouplings c;
    c.periodic = true;
    c.Jx = c.Jy = c.JDM = c.JSO = Eigen::MatrixXd::Zero(n, n);
    c.hz = Eigen::VectorXd::Constant(n, p.h);
    for (int j = 0; j < n; ++j) {
        const int l = (j + 1) % n;
        c.Jx(j, l) = c.Jx(l, j) = p.J * (1 + p.gamma) / 2;
        c.Jy(j, l) = c.Jy(l, j) = p.J * (1 - p.gamma) / 2;
        c.JSO(j, l) = c.JSO(l, j) = p.Gamma * (1 + p.alpha) / 2;
        c.JDM(j, l) = p.Gamma * (1 - p.alpha) / 2;
        c.JDM(l, j) = -c.JDM(j, l);
    }
    return c;
}

}  // namespace gammachain

#endif
