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

#ifndef GAMMACHAIN_CORRELATIONS_HPP
#define GAMMACHAIN_CORRELATIONS_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "model.hpp"
#include "pfaffian.hpp"

namespace gammachain {

/// Jordan-Wigner Majoranas A_j = c_j^dag + c_j and B_j = c_j^dag - c_j, so that
/// sz_j = A_j B_j, {A_i, A_j} = 2 delta_ij and {B_i, B_j} = -2 delta_ij.
enum class Majorana { A, B };

struct MajoranaOp {
    Majorana kind;
    int site;
};

/// Translation-invariant Majorana contractions of a Gaussian ground state, tabulated for
/// site separations |d| <= reach.
class ContractionSet {
public:
    ContractionSet() = default;

    ContractionSet(const FermionState& st, int r_max) : N_(static_cast<int>(st.k.size())), r_max_(r_max) {
        if (r_max < 1) throw invalid_parameter("contractions: r_max must be >= 1");
        if (r_max + 1 > N_) throw invalid_parameter("contractions: r_max + 1 exceeds N");
        reach_ = std::min(r_max + 2, N_ - 1);
        const int D = reach_;
        C_.assign(2 * D + 1, 0.0);
        F_.assign(2 * D + 1, 0.0);
        for (int i = 0; i < N_; ++i) {
            const cplx z = std::polar(1.0, st.k[i]);
            const cplx zi = std::conj(z);
            const double n = st.n[i];
            const cplx f = st.F[i];
            cplx up = 1.0, dn = 1.0;  // e^{ikd}, e^{-ikd}
            C_[D] += n;
            F_[D] += f;
            for (int d = 1; d <= D; ++d) {
                up *= z;
                dn *= zi;
                C_[D + d] += up * n;
                C_[D - d] += dn * n;
                F_[D + d] += dn * f;
                F_[D - d] += up * f;
            }
        }
        for (auto& v : C_) v /= N_;
        for (auto& v : F_) v /= N_;
    }

    int N() const { return N_; }
    int r_max() const { return r_max_; }
    int reach() const { return reach_; }

    /// <c_p^dag c_q> with d = p - q.
    cplx hop(int d) const { return C_.at(reach_ + d); }
    /// <c_p c_q> with d = p - q.
    cplx pair(int d) const { return F_.at(reach_ + d); }

    /// <X_p Y_q> for Majoranas X, Y.
    cplx operator()(Majorana x, int p, Majorana y, int q) const {
        const int d = p - q;
        if (std::abs(d) > reach_) throw invalid_parameter("contraction outside tabulated window");
        const double s1 = x == Majorana::A ? 1.0 : -1.0;
        const double s2 = y == Majorana::A ? 1.0 : -1.0;
        const double delta = d == 0 ? 1.0 : 0.0;
        // (c_p^dag + s1 c_p)(c_q^dag + s2 c_q)
        return std::conj(pair(-d)) + s2 * hop(d) + s1 * (delta - hop(-d)) + s1 * s2 * pair(d);
    }

    cplx operator()(const MajoranaOp& a, const MajoranaOp& b) const { return (*this)(a.kind, a.site, b.kind, b.site); }

    /// Contraction matrix <X_p Y_q> over the window p, q in [0, r_max].
    Eigen::MatrixXcd matrix(Majorana x, Majorana y) const {
        const int w = r_max_ + 1;
        Eigen::MatrixXcd M(w, w);
        for (int p = 0; p < w; ++p)
            for (int q = 0; q < w; ++q) M(p, q) = (*this)(x, p, y, q);
        return M;
    }

    Eigen::MatrixXcd S_AA() const { return matrix(Majorana::A, Majorana::A); }
    Eigen::MatrixXcd S_BB() const { return matrix(Majorana::B, Majorana::B); }
    Eigen::MatrixXcd S_BA() const { return matrix(Majorana::B, Majorana::A); }

private:
    int N_ = 0;
    int r_max_ = 0;
    int reach_ = 0;
    std::vector<cplx> C_, F_;
};

inline ContractionSet contractions(const ModelParams& p, int r_max, Filling filling = Filling::antiperiodic) {
    return ContractionSet(fermion_ground_state(p, filling), r_max);
}

/// <op_1 op_2 ... op_2m> by Wick's theorem as the Pfaffian of the antisymmetrized
/// contraction matrix, rows in the order given.
inline cplx wick(const ContractionSet& cs, const std::vector<MajoranaOp>& ops) {
    const int n = static_cast<int>(ops.size());
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            M(a, b) = cs(ops[a], ops[b]);
            M(b, a) = -M(a, b);
        }
    return pfaffian(M).value();
}

enum class Pauli { x, y, z };

inline char to_char(Pauli p) { return p == Pauli::x ? 'x' : p == Pauli::y ? 'y' : 'z'; }

struct Component {
    Pauli a, b;
};

inline std::string to_string(Component c) { return {to_char(c.a), to_char(c.b)}; }

inline Component parse_component(const std::string& s) {
    if (s == "xx") return {Pauli::x, Pauli::x};
    if (s == "yy") return {Pauli::y, Pauli::y};
    if (s == "zz") return {Pauli::z, Pauli::z};
    if (s == "xy") return {Pauli::x, Pauli::y};
    if (s == "yx") return {Pauli::y, Pauli::x};
    throw invalid_parameter("unsupported correlator component '" + s + "'");
}

inline const std::vector<Component>& all_components() {
    static const std::vector<Component> c{{Pauli::x, Pauli::x}, {Pauli::y, Pauli::y}, {Pauli::z, Pauli::z},
                                          {Pauli::x, Pauli::y}, {Pauli::y, Pauli::x}};
    return c;
}

/// <sz>.
inline double magnetization_z(const ContractionSet& cs) { return cs(Majorana::A, 0, Majorana::B, 0).real(); }

inline double magnetization_z(const ModelParams& p, Filling filling = Filling::antiperiodic) {
    return magnetization_z(contractions(p, 1, filling));
}

/// Raw <s^a_0 s^b_r> as a complex number. In between the end sites the Jordan-Wigner
/// string contributes A_l B_l for each l in (0, r):
///   xx: B_0 ... A_r        yy: -A_0 ... B_r
///   xy: i B_0 ... B_r      yx: i A_0 ... A_r      zz: A_0 B_0 A_r B_r
inline cplx raw_two_point_complex(const ContractionSet& cs, Component c, int r) {
    if (r < 1 || r > cs.r_max()) throw invalid_parameter("two_point: r outside [1, r_max]");
    using M = Majorana;
    if (c.a == Pauli::z || c.b == Pauli::z) {
        if (c.a != Pauli::z || c.b != Pauli::z) throw invalid_parameter("unsupported correlator component");
        return wick(cs, {{M::A, 0}, {M::B, 0}, {M::A, r}, {M::B, r}});
    }
    std::vector<MajoranaOp> ops;
    ops.push_back({c.a == Pauli::x ? M::B : M::A, 0});
    for (int l = 1; l < r; ++l) {
        ops.push_back({M::A, l});
        ops.push_back({M::B, l});
    }
    ops.push_back({c.b == Pauli::x ? M::A : M::B, r});
    const cplx pf = wick(cs, ops);
    if (c.a == Pauli::x && c.b == Pauli::x) return pf;
    if (c.a == Pauli::y && c.b == Pauli::y) return -pf;
    return cplx(0, 1) * pf;
}

struct CorrelatorResult {
    Component label{};
    int r = 0;
    double value = 0;
    double imag_residue = 0;
};

namespace detail {

inline double checked_real(cplx v, double& residue, const char* what) {
    residue = std::abs(v.imag());
    if (residue > 1e-10) throw numeric_error(std::string(what) + ": imaginary residue " + std::to_string(residue));
    return v.real();
}

}  // namespace detail

/// Raw <s^a_0 s^b_r>, checked to be real.
inline CorrelatorResult raw_two_point(const ContractionSet& cs, Component c, int r) {
    CorrelatorResult res{c, r, 0, 0};
    res.value = detail::checked_real(raw_two_point_complex(cs, c, r), res.imag_residue, "two_point");
    return res;
}

/// Connected G^ab_r = <s^a_0 s^b_r> - <s^a><s^b>; only <sz> is nonzero.
inline CorrelatorResult two_point(const ContractionSet& cs, Component c, int r) {
    CorrelatorResult res = raw_two_point(cs, c, r);
    if (c.a == Pauli::z) {
        const double m = magnetization_z(cs);
        res.value -= m * m;
    }
    return res;
}

inline CorrelatorResult two_point(const ModelParams& p, Component c, int r, Filling filling = Filling::antiperiodic) {
    return two_point(contractions(p, r, filling), c, r);
}

/// |G^xy_r| - |G^yx_r|.
inline double chiral_order(const ContractionSet& cs, int r) {
    return std::abs(two_point(cs, {Pauli::x, Pauli::y}, r).value) - std::abs(two_point(cs, {Pauli::y, Pauli::x}, r).value);
}

inline double chiral_order(const ModelParams& p, int r, Filling filling = Filling::antiperiodic) {
    return chiral_order(contractions(p, r, filling), r);
}

/// Connected <k_0 k_r> - <k_0><k_r> for the bond operator k_j = i B_j B_{j+1}
/// (= sx_j sy_{j+1}). At r = 1 the product k_0 k_1 = B_0 B_2 is not Hermitian and the
/// result is complex; for r >= 2 it is real.
inline cplx dimer_correlation(const ContractionSet& cs, int r) {
    if (r < 1 || r + 1 > cs.reach()) throw invalid_parameter("dimer_correlation: r outside window");
    using M = Majorana;
    auto bb = [&](int p, int q) { return cs(M::B, p, M::B, q); };
    const cplx k1 = cplx(0, 1) * bb(0, 1);
    if (r == 1) return bb(0, 2) - k1 * k1;
    const cplx kk = bb(0, r) * bb(1, r + 1) - bb(0, 1) * bb(r, r + 1) - bb(0, r + 1) * bb(1, r);
    return kk - k1 * k1;
}

inline cplx dimer_correlation(const ModelParams& p, int r, Filling filling = Filling::antiperiodic) {
    return dimer_correlation(contractions(p, r, filling), r);
}

/// Connected xx or yy correlator as an r x r Toeplitz determinant. Valid only when
/// <A_p A_q> = <B_p B_q> = 0 for p != q (Gamma = 0 in a gapped phase).
inline double toeplitz_two_point(const ContractionSet& cs, Component c, int r) {
    if (r < 1 || r > cs.r_max()) throw invalid_parameter("toeplitz_two_point: r outside [1, r_max]");
    using M = Majorana;
    for (int d = 1; d <= r; ++d)
        if (std::abs(cs(M::A, 0, M::A, d)) > 1e-12 || std::abs(cs(M::B, 0, M::B, d)) > 1e-12)
            throw invalid_parameter("toeplitz_two_point: AA/BB contractions do not vanish");
    Eigen::MatrixXcd T(r, r);
    double sign = 1;
    if (c.a == Pauli::x && c.b == Pauli::x) {
        for (int l = 0; l < r; ++l)
            for (int m = 0; m < r; ++m) T(l, m) = cs(M::B, l, M::A, m + 1);
    } else if (c.a == Pauli::y && c.b == Pauli::y) {
        for (int l = 0; l < r; ++l)
            for (int m = 0; m < r; ++m) T(l, m) = cs(M::A, l, M::B, m + 1);
        sign = r % 2 ? -1 : 1;
    } else {
        throw invalid_parameter("toeplitz_two_point: only xx and yy");
    }
    double residue = 0;
    return sign * detail::checked_real(T.determinant(), residue, "toeplitz_two_point");
}

}  // namespace gammachain

#endif
