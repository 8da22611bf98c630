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

#ifndef GAMMACHAIN_MODEL_HPP
#define GAMMACHAIN_MODEL_HPP

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "error.hpp"
#include "numerics.hpp"

namespace gammachain {

using cplx = std::complex<double>;

/// Fermion boundary channel after the Jordan-Wigner map. Even fermion parity lives on the
/// antiperiodic grid, odd parity on the periodic one.
enum class Sector { antiperiodic, periodic };

inline std::string to_string(Sector s) { return s == Sector::antiperiodic ? "antiperiodic" : "periodic"; }

/// Chain couplings of
///   H = sum_j J[(1+g)/2 sx sx + (1-g)/2 sy sy] + Gamma[sx sy + alpha sy sx] + h sz
/// on an N-site ring.
struct ModelParams {
    double J = 1.0;
    double gamma = 0.6;
    double Gamma = 0.6;
    double alpha = 0.5;
    double h = 0.5;
    int N = 2000;
    Sector sector = Sector::antiperiodic;
};

enum class Param { J, gamma, Gamma, alpha, h };

inline std::string to_string(Param p) {
    switch (p) {
        case Param::J: return "J";
        case Param::gamma: return "gamma";
        case Param::Gamma: return "Gamma";
        case Param::alpha: return "alpha";
        case Param::h: return "h";
    }
    return "?";
}

inline double get(const ModelParams& p, Param which) {
    switch (which) {
        case Param::J: return p.J;
        case Param::gamma: return p.gamma;
        case Param::Gamma: return p.Gamma;
        case Param::alpha: return p.alpha;
        case Param::h: return p.h;
    }
    return 0;
}

inline ModelParams with(ModelParams p, Param which, double value) {
    switch (which) {
        case Param::J: p.J = value; break;
        case Param::gamma: p.gamma = value; break;
        case Param::Gamma: p.Gamma = value; break;
        case Param::alpha: p.alpha = value; break;
        case Param::h: p.h = value; break;
    }
    return p;
}

/// Couplings finite and J > 0. Size is not checked.
inline void validate_couplings(const ModelParams& p) {
    for (double v : {p.J, p.gamma, p.Gamma, p.alpha, p.h})
        if (!std::isfinite(v)) throw invalid_parameter("model parameters must be finite");
    if (!(p.J > 0)) throw invalid_parameter("J must be positive");
}

/// Full free-fermion validity: couplings plus N >= 4 and even.
inline void validate(const ModelParams& p) {
    validate_couplings(p);
    if (p.N < 4 || p.N % 2 != 0)
        throw invalid_parameter("N must be even and >= 4, got " + std::to_string(p.N));
}

struct MomentumGrid {
    Sector sector = Sector::antiperiodic;
    std::vector<double> k;  // ascending, in (-pi, pi]
};

/// Antiperiodic: k = n pi / N for odd n in [-(N-1), N-1]. Periodic: k = 2 pi m / N for
/// m in [-N/2 + 1, N/2].
inline MomentumGrid momentum_grid(int N, Sector sector) {
    if (N < 4 || N % 2 != 0)
        throw invalid_parameter("momentum_grid: N must be even and >= 4, got " + std::to_string(N));
    MomentumGrid g;
    g.sector = sector;
    g.k.resize(N);
    for (int i = 0; i < N; ++i) {
        if (sector == Sector::antiperiodic)
            g.k[i] = pi * (2 * i - (N - 1)) / N;
        else
            g.k[i] = 2.0 * pi * (i - N / 2 + 1) / N;
    }
    return g;
}

/// Index of the partner momentum -k on a grid built by momentum_grid, or -1 for the
/// unpaired periodic modes k = 0 and k = pi.
inline int partner_index(int i, int N, Sector sector) {
    if (sector == Sector::antiperiodic) return N - 1 - i;
    if (i == N / 2 - 1 || i == N - 1) return -1;
    return N - 2 - i;
}

/// Quasiparticle energy
///   eps_k = 2 sqrt([Gamma^2 (1+alpha)^2 + J^2 gamma^2] sin^2 k + (J cos k - h)^2)
///           - 2 Gamma (1-alpha) sin k.
inline double dispersion(const ModelParams& p, double k) {
    const double s = std::sin(k), c = std::cos(k);
    const double gp = p.Gamma * (1 + p.alpha);
    const double pair2 = gp * gp + p.J * p.J * p.gamma * p.gamma;
    const double xi = p.J * c - p.h;
    return 2.0 * std::sqrt(pair2 * s * s + xi * xi) - 2.0 * p.Gamma * (1 - p.alpha) * s;
}

struct BdGBlock {
    double k = 0;
    double A = 0;  // J cos k + Gamma (alpha - 1) sin k - h
    cplx B;        // [Gamma (1 + alpha) - i J gamma] sin k
};

inline BdGBlock bdg_block(const ModelParams& p, double k) {
    BdGBlock b;
    b.k = k;
    b.A = p.J * std::cos(k) + p.Gamma * (p.alpha - 1) * std::sin(k) - p.h;
    b.B = cplx(p.Gamma * (1 + p.alpha), -p.J * p.gamma) * std::sin(k);
    return b;
}

/// Pairing-symmetric Nambu pieces of the k, -k block: xi_s = A_k + A_-k, omega = 2 sqrt(
/// (xi_s/2)^2 + |B_k|^2), and pairing amplitude Delta_k = B_k.
struct PairBlock {
    double xi_s = 0;
    double omega = 0;
    cplx delta;
};

inline PairBlock pair_block(const ModelParams& p, double k) {
    const double s = std::sin(k);
    PairBlock b;
    b.xi_s = 2.0 * (p.J * std::cos(k) - p.h);
    b.delta = cplx(p.Gamma * (1 + p.alpha), -p.J * p.gamma) * s;
    b.omega = std::sqrt(b.xi_s * b.xi_s + 4.0 * std::norm(b.delta));
    return b;
}

struct Bogoliubov {
    double u = 1, v = 0, phi = 0;
};

struct Spectrum {
    MomentumGrid grid;
    std::vector<double> energies;
    std::vector<Bogoliubov> bogoliubov;
    std::vector<bool> filled;  // eps_k < 0
};

inline Spectrum spectrum(const ModelParams& p, Sector sector) {
    validate(p);
    Spectrum sp;
    sp.grid = momentum_grid(p.N, sector);
    const std::size_t n = sp.grid.k.size();
    sp.energies.resize(n);
    sp.bogoliubov.resize(n);
    sp.filled.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = sp.grid.k[i];
        sp.energies[i] = dispersion(p, k);
        sp.filled[i] = sp.energies[i] < 0;
        const PairBlock b = pair_block(p, k);
        Bogoliubov& q = sp.bogoliubov[i];
        if (b.omega > 0) {
            const double u2 = std::clamp(0.5 * (1 + b.xi_s / b.omega), 0.0, 1.0);
            q.u = std::sqrt(u2);
            q.v = std::sqrt(1 - u2);
        }
        q.phi = std::arg(b.delta);
    }
    return sp;
}

struct GapResult {
    double signed_min = 0;  // min_k eps_k over the continuum
    double k_signed = 0;
    double gap = 0;         // min_k |eps_k|
    double k_gap = 0;
};

namespace detail {

inline double wrap_momentum(double k) {
    while (k <= -pi) k += 2 * pi;
    while (k > pi) k -= 2 * pi;
    return k;
}

/// Continuum minimum of f over the Brillouin zone: dense scan, then golden-section
/// refinement around the few lowest local minima of the scan.
template <class F>
std::pair<double, double> zone_minimum(F&& f, int grid = 2048, int seeds = 3) {
    std::vector<double> val(grid);
    const double dk = 2 * pi / grid;
    for (int i = 0; i < grid; ++i) val[i] = f(-pi + dk * i);
    std::vector<int> minima;
    for (int i = 0; i < grid; ++i) {
        double l = val[(i + grid - 1) % grid], r = val[(i + 1) % grid];
        if (val[i] <= l && val[i] <= r) minima.push_back(i);
    }
    std::sort(minima.begin(), minima.end(), [&](int a, int b) { return val[a] < val[b]; });
    if (minima.size() > static_cast<std::size_t>(seeds)) minima.resize(seeds);
    double best_k = 0, best = std::numeric_limits<double>::infinity();
    for (int i : minima) {
        const double c = -pi + dk * i;
        auto [k, v] = golden_minimize([&](double x) { return f(x); }, c - dk, c + dk, 1e-12);
        if (v < best) {
            best = v;
            best_k = wrap_momentum(k);
        }
    }
    return {best_k, best};
}

}  // namespace detail

inline GapResult excitation_gap(const ModelParams& p) {
    validate_couplings(p);
    GapResult g;
    std::tie(g.k_signed, g.signed_min) = detail::zone_minimum([&](double k) { return dispersion(p, k); });
    std::tie(g.k_gap, g.gap) = detail::zone_minimum([&](double k) { return std::abs(dispersion(p, k)); });
    if (g.signed_min <= 0) {
        g.gap = 0;
    }
    return g;
}

enum class Phase { afm_I, pm_II, spiral_III, cp1, cp2, cp3 };

inline std::string to_string(Phase ph) {
    switch (ph) {
        case Phase::afm_I: return "AFM_I";
        case Phase::pm_II: return "PM_II";
        case Phase::spiral_III: return "Spiral_III";
        case Phase::cp1: return "CP1";
        case Phase::cp2: return "CP2";
        case Phase::cp3: return "CP3";
    }
    return "?";
}

inline bool is_boundary(Phase ph) { return ph == Phase::cp1 || ph == Phase::cp2 || ph == Phase::cp3; }

struct CriticalSet {
    double h_c1 = 1;
    std::optional<double> alpha_c1;
    std::optional<double> h_c2;     // at the given alpha
    std::optional<double> alpha_c2; // at the given h
    double k_c1 = 0;
    std::optional<double> k_c2;     // arccos(h/J) on the alpha_c1 line
    std::optional<double> k_c3;     // arccos(J/h_c2) on the h_c2 line
};

/// Critical lines at the given (J, gamma, Gamma, alpha); the field enters only alpha_c2
/// and k_c2. The model is invariant under h -> -h, Gamma -> -Gamma, so |h| is used.
inline CriticalSet critical_set(const ModelParams& p) {
    validate_couplings(p);
    CriticalSet cs;
    cs.h_c1 = p.J;
    const double g = p.Gamma / p.J;
    const double hr = std::abs(p.h) / p.J;
    if (g != 0) {
        cs.alpha_c1 = -p.gamma * p.gamma / (4 * g * g);
        cs.alpha_c2 = (1 - hr * hr - p.gamma * p.gamma) / (4 * g * g);
        if (hr <= 1) cs.k_c2 = std::acos(hr);
    }
    const double hc2sq = 1 - p.gamma * p.gamma - 4 * g * g * p.alpha;
    if (hc2sq >= 0) {
        cs.h_c2 = p.J * std::sqrt(hc2sq);
        if (hc2sq >= 1) cs.k_c3 = std::acos(1 / std::sqrt(hc2sq));
    }
    return cs;
}

/// Phase from the critical-line inequalities; boundary labels within 1e-12 of a line.
inline Phase classify_phase(const ModelParams& p, double tol = 1e-12) {
    validate_couplings(p);
    const double g = p.Gamma / p.J;
    const double hr = std::abs(p.h) / p.J;
    if (g == 0) {
        if (std::abs(hr - 1) <= tol) return Phase::cp1;
        if (hr > 1) return Phase::pm_II;
        return p.gamma != 0 ? Phase::afm_I : Phase::spiral_III;
    }
    const double ac1 = -p.gamma * p.gamma / (4 * g * g);
    const double hc2sq = 1 - p.gamma * p.gamma - 4 * g * g * p.alpha;
    const double hc2 = hc2sq > 0 ? std::sqrt(hc2sq) : 0.0;
    if (std::abs(hr - 1) <= tol && p.alpha >= ac1 - tol) return Phase::cp1;
    if (hr < 1 && std::abs(p.alpha - ac1) <= tol * std::max(1.0, std::abs(ac1))) return Phase::cp2;
    if (hr > 1 && hc2sq > 0 && std::abs(hr - hc2) <= tol) return Phase::cp3;
    if (hr < 1 && p.alpha > ac1) return Phase::afm_I;
    if (hr > 1 && hr * hr > hc2sq) return Phase::pm_II;
    return Phase::spiral_III;
}

/// Zeros of eps_k inside the spiral phase (and on its boundary), with the sign of k
/// set by Gamma (1 - alpha). Absent in gapped phases.
inline std::optional<std::array<double, 2>> fermion_points(const ModelParams& p) {
    const Phase ph = classify_phase(p, 1e-9);
    if (ph == Phase::afm_I || ph == Phase::pm_II || ph == Phase::cp1) return std::nullopt;
    const double g = p.Gamma / p.J;
    const double hr = std::abs(p.h) / p.J;
    const double X = 4 * p.alpha * g * g + p.gamma * p.gamma;
    const double sgn = p.Gamma * (1 - p.alpha);
    if (X == 1 || sgn == 0) return std::nullopt;
    double disc = (hr * hr - 1) * X + X * X;
    if (disc < 0) {
        if (disc < -1e-9) return std::nullopt;
        disc = 0;
    }
    // h -> -h maps k -> pi - k, i.e. cos k -> -cos k.
    const double flip = p.h < 0 ? -1.0 : 1.0;
    const double cp = flip * (hr + std::sqrt(disc)) / (1 - X);
    const double cm = flip * (hr - std::sqrt(disc)) / (1 - X);
    const double lo = std::min(cp, cm), hi = std::max(cp, cm);
    if (lo < -1 - 1e-12 || hi > 1 + 1e-12) return std::nullopt;
    const double s = sgn > 0 ? 1.0 : -1.0;
    return std::array<double, 2>{s * std::acos(std::clamp(hi, -1.0, 1.0)),
                                 s * std::acos(std::clamp(lo, -1.0, 1.0))};
}

/// Fermion ground state in one boundary sector: per-mode n_k = <c_k^dag c_k> and
/// F_k = <c_k c_-k>, total energy, and fermion parity.
struct FermionState {
    Sector sector = Sector::antiperiodic;
    std::vector<double> k;
    std::vector<double> n;
    std::vector<cplx> F;
    double energy = 0;
    int parity = 0;  // number of fermions mod 2
};

/// Fills all negative-energy quasiparticle modes of the given sector. With enforce_parity
/// the mode of smallest |energy| is toggled when the filling has the wrong parity for
/// the sector (even on the antiperiodic grid, odd on the periodic grid).
inline FermionState sector_state(const ModelParams& p, Sector sector, bool enforce_parity) {
    validate(p);
    const int N = p.N;
    FermionState st;
    st.sector = sector;
    st.k = momentum_grid(N, sector).k;
    std::vector<double> e(N);
    std::vector<PairBlock> blocks(N);
    double energy = N * p.h;
    for (int i = 0; i < N; ++i) {
        blocks[i] = pair_block(p, st.k[i]);
        const int j = partner_index(i, N, sector);
        if (j < 0) {
            e[i] = blocks[i].xi_s;
        } else {
            e[i] = dispersion(p, st.k[i]);
            energy += 0.5 * (blocks[i].xi_s - blocks[i].omega);
        }
    }
    std::vector<int> nb(N);
    int count = 0;
    for (int i = 0; i < N; ++i) {
        nb[i] = e[i] < 0;
        count += nb[i];
    }
    const int wanted = sector == Sector::antiperiodic ? 0 : 1;
    if (enforce_parity && count % 2 != wanted) {
        int flip = 0;
        for (int i = 1; i < N; ++i)
            if (std::abs(e[i]) < std::abs(e[flip])) flip = i;
        nb[flip] ^= 1;
        count += nb[flip] ? 1 : -1;
    }
    for (int i = 0; i < N; ++i)
        if (nb[i]) energy += e[i];
    st.energy = energy;
    st.parity = count % 2;
    st.n.resize(N);
    st.F.resize(N);
    for (int i = 0; i < N; ++i) {
        const int j = partner_index(i, N, sector);
        if (j < 0) {
            st.n[i] = nb[i];
            st.F[i] = 0;
            continue;
        }
        const PairBlock& b = blocks[i];
        double u2 = b.xi_s >= 0 ? 1.0 : 0.0;
        cplx f = 0;
        if (b.omega > 0) {
            u2 = 0.5 * (1 + b.xi_s / b.omega);
            f = b.delta / b.omega;
        }
        st.n[i] = u2 * nb[i] + (1 - u2) * (1 - nb[j]);
        st.F[i] = f * static_cast<double>(1 - nb[i] - nb[j]);
    }
    return st;
}

/// How the many-body ground state is selected.
///  - antiperiodic: antiperiodic grid with all eps_k < 0 filled and no parity constraint
///    (the large-N description, exact up to O(1/N) boundary corrections).
///  - exact: parity-constrained filling in both sectors, lowest energy wins. Exact at any N.
enum class Filling { antiperiodic, exact };

inline std::string to_string(Filling f) { return f == Filling::antiperiodic ? "antiperiodic" : "exact"; }

inline FermionState fermion_ground_state(const ModelParams& p, Filling filling) {
    if (filling == Filling::antiperiodic) return sector_state(p, Sector::antiperiodic, false);
    FermionState a = sector_state(p, Sector::antiperiodic, true);
    FermionState b = sector_state(p, Sector::periodic, true);
    return b.energy < a.energy ? b : a;
}

enum class EnergyMode { finite_n, finite_n_exact, thermodynamic };

namespace detail {

/// -(1/4pi) int |eps_k| dk, split at the sign changes of eps_k.
inline double thermodynamic_energy(const ModelParams& p, double tol) {
    std::vector<double> cuts{-pi, 0.0, pi};
    const int grid = 4096;
    const double dk = 2 * pi / grid;
    double prev = dispersion(p, -pi);
    for (int i = 1; i <= grid; ++i) {
        const double k = -pi + dk * i;
        const double cur = dispersion(p, k);
        if ((prev < 0) != (cur < 0))
            cuts.push_back(bisect([&](double x) { return dispersion(p, x); }, k - dk, k, 1e-15));
        prev = cur;
    }
    std::sort(cuts.begin(), cuts.end());
    auto f = [&](double k) { return std::abs(dispersion(p, k)); };
    double total = 0, err_total = 0, l1_total = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] - cuts[i] <= 0) continue;
        double err = 0, l1 = 0;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, cuts[i], cuts[i + 1], 20,
                                                                               tol, &err, &l1);
        err_total += err;
        l1_total += l1;
    }
    if (err_total > 10 * tol * std::max(l1_total, 1e-300))
        throw numeric_error("energy quadrature did not converge: error estimate " + std::to_string(err_total) +
                            " for integral " + std::to_string(total));
    return -total / (4 * pi);
}

}  // namespace detail

/// Ground-state energy per site.
///  - finite_n: -sum_k |eps_k| / (2N) on the antiperiodic grid.
///  - finite_n_exact: exact lowest eigenvalue / N, both sectors with parity constraints.
///  - thermodynamic: -(1/4pi) int |eps_k| dk, adaptive Gauss-Kronrod, relative tolerance 1e-10.
inline double ground_state_energy_density(const ModelParams& p, EnergyMode mode) {
    switch (mode) {
        case EnergyMode::finite_n: {
            validate(p);
            const MomentumGrid g = momentum_grid(p.N, Sector::antiperiodic);
            double s = 0;
            for (double k : g.k) s += std::abs(dispersion(p, k));
            return -s / (2.0 * p.N);
        }
        case EnergyMode::finite_n_exact:
            return fermion_ground_state(p, Filling::exact).energy / p.N;
        case EnergyMode::thermodynamic:
            validate_couplings(p);
            return detail::thermodynamic_energy(p, 1e-10);
    }
    return 0;
}

struct Derivative {
    double value = 0;
    bool ill_conditioned = false;  // step below 1e-8
};

namespace detail {

template <class F>
double second_difference(F&& f, double x, double s) {
    return (f(x + s) - 2.0 * f(x) + f(x - s)) / (s * s);
}

template <class F>
double first_difference(F&& f, double x, double s) {
    return (f(x + s) - f(x - s)) / (2.0 * s);
}

}  // namespace detail

/// Central second difference of f at x, optionally Richardson-extrapolated from s and s/2.
template <class F>
Derivative second_derivative(F&& f, double x, double step, bool richardson = false) {
    if (!(step > 0)) throw invalid_parameter("derivative step must be positive");
    Derivative d;
    d.ill_conditioned = step < 1e-8;
    const double coarse = detail::second_difference(f, x, step);
    d.value = richardson ? (4.0 * detail::second_difference(f, x, step / 2) - coarse) / 3.0 : coarse;
    return d;
}

/// Central first difference of f at x, optionally Richardson-extrapolated.
template <class F>
Derivative first_derivative(F&& f, double x, double step, bool richardson = false) {
    if (!(step > 0)) throw invalid_parameter("derivative step must be positive");
    Derivative d;
    d.ill_conditioned = step < 1e-8;
    const double coarse = detail::first_difference(f, x, step);
    d.value = richardson ? (4.0 * detail::first_difference(f, x, step / 2) - coarse) / 3.0 : coarse;
    return d;
}

/// d^2 e0 / d(wrt)^2 by central differences (default step 1e-3).
inline Derivative energy_second_derivative(const ModelParams& p, Param wrt, double step = 1e-3,
                                           EnergyMode mode = EnergyMode::finite_n, bool richardson = false) {
    auto e0 = [&](double x) { return ground_state_energy_density(with(p, wrt, x), mode); };
    return second_derivative(e0, get(p, wrt), step, richardson);
}

}  // namespace gammachain

#endif
