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

#ifndef GAMMACHAIN_SCALING_HPP
#define GAMMACHAIN_SCALING_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coherence.hpp"
#include "correlations.hpp"
#include "error.hpp"
#include "model.hpp"
#include "numerics.hpp"

namespace gammachain {

struct FitResult {
    double slope = 0;
    double intercept = 0;
    double slope_stderr = 0;
    double intercept_stderr = 0;
    int n_points = 0;
    double window_lo = 0;  // range of the abscissa before taking logarithms
    double window_hi = 0;
    std::vector<std::string> warnings;
};

/// Least-squares line through (x, y); needs at least three points.
inline FitResult linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() < 3) throw invalid_parameter("fit needs at least 3 points");
    const detail::LineFit lf = detail::least_squares(x, y);
    FitResult f;
    f.slope = lf.slope;
    f.intercept = lf.intercept;
    f.slope_stderr = lf.slope_stderr;
    f.intercept_stderr = lf.intercept_stderr;
    f.n_points = static_cast<int>(x.size());
    f.window_lo = *std::min_element(x.begin(), x.end());
    f.window_hi = *std::max_element(x.begin(), x.end());
    return f;
}

/// value = a ln N + c.
inline FitResult log_fit_N(const std::vector<int>& sizes, const std::vector<double>& values) {
    if (sizes.size() < 4) throw invalid_parameter("log_fit_N needs at least 4 sizes");
    std::vector<double> x;
    for (int n : sizes) {
        if (n <= 0) throw invalid_parameter("log_fit_N: sizes must be positive");
        x.push_back(std::log(static_cast<double>(n)));
    }
    FitResult f = linear_fit(x, values);
    f.window_lo = *std::min_element(sizes.begin(), sizes.end());
    f.window_hi = *std::max_element(sizes.begin(), sizes.end());
    return f;
}

/// value = b ln(distance) + c. With a finite size N, distances below 10/N sit in the
/// finite-size rounding region and produce a warning.
inline FitResult log_fit_distance(const std::vector<double>& distances, const std::vector<double>& values,
                                  std::optional<int> N = std::nullopt) {
    std::vector<double> x;
    for (double d : distances) {
        if (!(d > 0)) throw invalid_parameter("log_fit_distance: distances must be positive");
        x.push_back(std::log(d));
    }
    FitResult f = linear_fit(x, values);
    f.window_lo = *std::min_element(distances.begin(), distances.end());
    f.window_hi = *std::max_element(distances.begin(), distances.end());
    if (N && f.window_lo < 10.0 / *N)
        f.warnings.push_back("fit window reaches the finite-size rounding region (distance < 10/N)");
    return f;
}

/// ln y = slope ln x + intercept.
inline FitResult power_fit(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) throw numeric_error("power_fit: non-positive data");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    FitResult f = linear_fit(lx, ly);
    f.window_lo = *std::min_element(x.begin(), x.end());
    f.window_hi = *std::max_element(x.begin(), x.end());
    return f;
}

struct Exponent {
    double value = 0;
    double uncertainty = 0;
};

/// nu = |a / b| with first-order (quadrature) propagation of the slope errors.
inline Exponent exponent_nu(const FitResult& a, const FitResult& b) {
    if (std::abs(b.slope) < 1e-12) throw numeric_error("exponent undefined: distance slope is zero");
    Exponent e;
    e.value = std::abs(a.slope / b.slope);
    const double ra = a.slope != 0 ? a.slope_stderr / a.slope : 0.0;
    const double rb = b.slope_stderr / b.slope;
    e.uncertainty = e.value * std::sqrt(ra * ra + rb * rb);
    return e;
}

struct SweepSpec {
    Param parameter = Param::h;
    double lo = 0.95, hi = 1.05;
    int points = 400;
    ModelParams base;
    std::vector<int> sizes;
};

struct Peak {
    int N = 0;
    double location = 0;
    double value = 0;
    bool at_boundary = false;
};

using Evaluator = std::function<double(const ModelParams&)>;

/// Maximum of the evaluator along the sweep for each size: coarse grid, then
/// golden-section refinement to 1e-6 in the parameter.
inline std::vector<Peak> peak_locate(const Evaluator& f, const SweepSpec& sw) {
    if (!(sw.lo < sw.hi)) throw invalid_parameter("sweep range must be strictly ordered");
    if (sw.points < 3) throw invalid_parameter("sweep needs at least 3 points");
    std::vector<Peak> out;
    const std::vector<double> xs = detail::linspace(sw.lo, sw.hi, sw.points);
    for (int N : sw.sizes) {
        ModelParams p = sw.base;
        p.N = N;
        auto at = [&](double x) { return f(with(p, sw.parameter, x)); };
        const std::vector<double> ys = detail::parallel_map<double>(xs.size(), [&](std::size_t i) { return at(xs[i]); });
        const std::size_t i = std::max_element(ys.begin(), ys.end()) - ys.begin();
        Peak pk{N, xs[i], ys[i], i == 0 || i + 1 == xs.size()};
        if (!pk.at_boundary) {
            auto [x, negv] = detail::golden_minimize([&](double x) { return -at(x); }, xs[i - 1], xs[i + 1], 1e-6);
            if (-negv > pk.value) {
                pk.location = x;
                pk.value = -negv;
            }
        }
        out.push_back(pk);
    }
    return out;
}

/// Scaling quantities, all evaluated by Richardson-extrapolated central differences.
///  - energy_curvature: -d^2 e0 / d(wrt)^2 on the antiperiodic grid.
///  - correlation_derivative: d G^xx_1 / d(wrt).
///  - sqc_susceptibility: d SQC_r / d(wrt).
enum class Quantity { energy_curvature, correlation_derivative, sqc_susceptibility };

inline std::string to_string(Quantity q) {
    switch (q) {
        case Quantity::energy_curvature: return "energy";
        case Quantity::correlation_derivative: return "correlation";
        case Quantity::sqc_susceptibility: return "sqc";
    }
    return "?";
}

struct QuantitySpec {
    Quantity quantity = Quantity::energy_curvature;
    Param wrt = Param::h;
    int r = 1;
};

inline double evaluate(const QuantitySpec& q, const ModelParams& p, double step) {
    const double x = get(p, q.wrt);
    switch (q.quantity) {
        case Quantity::energy_curvature: {
            auto e0 = [&](double v) { return ground_state_energy_density(with(p, q.wrt, v), EnergyMode::finite_n); };
            return -second_derivative(e0, x, step, true).value;
        }
        case Quantity::correlation_derivative: {
            auto g = [&](double v) {
                return raw_two_point(contractions(with(p, q.wrt, v), 1), {Pauli::x, Pauli::x}, 1).value;
            };
            return first_derivative(g, x, step, true).value;
        }
        case Quantity::sqc_susceptibility: {
            auto c = [&](double v) { return steered_quantum_coherence(with(p, q.wrt, v), q.r); };
            return first_derivative(c, x, step, true).value;
        }
    }
    return 0;
}

/// Lattice size standing in for the thermodynamic limit in distance fits.
inline constexpr int thermodynamic_N = 1 << 20;

enum class Side { below, above, symmetric };

inline std::string to_string(Side s) {
    return s == Side::below ? "below" : s == Side::above ? "above" : "symmetric";
}

/// Peak-height and distance fits for one quantity around lambda_c.
///  Peaks: sweep lambda_c +- half_width at each size, differences with step = step_scale / N.
///  Distances: size thermodynamic_N, differences with step = step_scale * distance; the
///  symmetric side averages the two one-sided values, which cancels the odd-in-distance
///  correction to the logarithm.
struct ScalingOptions {
    std::vector<int> sizes{200, 400, 600, 800, 1000, 1200, 1400, 1600, 1800, 2000};
    double window_lo = 1e-4, window_hi = 1e-2;
    int distance_points = 12;
    Side side = Side::symmetric;
    double half_width = 0.05;
    int points = 400;
    double step_scale = 0.2;
    int distance_N = thermodynamic_N;
};

struct ScalingReport {
    QuantitySpec quantity;
    double lambda_c = 0;
    std::vector<Peak> peaks;
    std::vector<double> distances;
    std::vector<double> distance_values;
    FitResult a, b;
    Exponent nu;
};

inline std::vector<Peak> scaling_peaks(const QuantitySpec& q, const ModelParams& base, double lambda_c,
                                       const ScalingOptions& opt) {
    SweepSpec sw;
    sw.parameter = q.wrt;
    sw.lo = lambda_c - opt.half_width;
    sw.hi = lambda_c + opt.half_width;
    sw.points = opt.points;
    sw.base = base;
    sw.sizes = opt.sizes;
    return peak_locate([&](const ModelParams& p) { return evaluate(q, p, opt.step_scale / p.N); }, sw);
}

inline std::vector<double> distance_series(const QuantitySpec& q, const ModelParams& base, double lambda_c,
                                           const std::vector<double>& distances, Side side, double step_scale,
                                           int N) {
    ModelParams p = base;
    p.N = N;
    return detail::parallel_map<double>(distances.size(), [&](std::size_t i) {
        const double d = distances[i];
        auto at = [&](double x) { return evaluate(q, with(p, q.wrt, x), step_scale * d); };
        if (side == Side::below) return at(lambda_c - d);
        if (side == Side::above) return at(lambda_c + d);
        return 0.5 * (at(lambda_c - d) + at(lambda_c + d));
    });
}

inline ScalingReport scaling_fit(const QuantitySpec& q, const ModelParams& base, double lambda_c,
                                 const ScalingOptions& opt = {}) {
    ScalingReport rep;
    rep.quantity = q;
    rep.lambda_c = lambda_c;
    rep.peaks = scaling_peaks(q, base, lambda_c, opt);
    std::vector<double> heights;
    for (const Peak& pk : rep.peaks) heights.push_back(pk.value);
    rep.a = log_fit_N(opt.sizes, heights);
    for (const Peak& pk : rep.peaks)
        if (pk.at_boundary) rep.a.warnings.push_back("peak at sweep boundary for N=" + std::to_string(pk.N));
    rep.distances = detail::geomspace(opt.window_lo, opt.window_hi, opt.distance_points);
    rep.distance_values = distance_series(q, base, lambda_c, rep.distances, opt.side, opt.step_scale, opt.distance_N);
    rep.b = log_fit_distance(rep.distances, rep.distance_values, opt.distance_N);
    rep.nu = exponent_nu(rep.a, rep.b);
    return rep;
}

enum class Boundary { CP1, CP2, CP3 };

inline std::string to_string(Boundary b) { return b == Boundary::CP1 ? "CP1" : b == Boundary::CP2 ? "CP2" : "CP3"; }

/// Location of a boundary at the given parameters: the tuning parameter, its critical
/// value, and the momentum where the gap closes.
struct CriticalPoint {
    Param parameter = Param::h;
    double value = 0;
    double k_c = 0;
};

inline CriticalPoint critical_point(const ModelParams& p, Boundary b) {
    const CriticalSet cs = critical_set(p);
    switch (b) {
        case Boundary::CP1: return {Param::h, cs.h_c1, 0.0};
        case Boundary::CP2:
            if (!cs.alpha_c1 || !cs.k_c2) throw invalid_parameter("CP2 needs Gamma != 0 and |h| <= J");
            return {Param::alpha, *cs.alpha_c1, *cs.k_c2};
        case Boundary::CP3:
            if (!cs.h_c2 || !cs.k_c3) throw invalid_parameter("CP3 needs h_c2 >= J at this alpha");
            return {Param::h, *cs.h_c2, *cs.k_c3};
    }
    return {};
}

/// Gap-closing power law Delta ~ C |lambda - lambda_c|^(nu z) approached from `side`;
/// slope is nu z and exp(intercept) is C.
inline FitResult gap_scaling_fit(const ModelParams& p, Boundary b, Side side, double lo = 1e-4, double hi = 1e-2,
                                 int points = 12) {
    if (side == Side::symmetric) throw invalid_parameter("gap_scaling_fit approaches from one side");
    const CriticalPoint cp = critical_point(p, b);
    const double sgn = side == Side::above ? 1.0 : -1.0;
    const std::vector<double> ds = detail::geomspace(lo, hi, points);
    std::vector<double> gaps;
    for (double d : ds) {
        const ModelParams q = with(p, cp.parameter, cp.value + sgn * d);
        const Phase ph = classify_phase(q);
        if (ph == Phase::spiral_III) throw invalid_parameter("gap_scaling_fit: side is gapless");
        gaps.push_back(excitation_gap(q).gap);
    }
    return power_fit(ds, gaps);
}

/// Dispersion exponent eps ~ C |k - k_c|^z at a critical point; `side` picks k > k_c
/// (above) or k < k_c (below).
inline FitResult dispersion_exponent_z(const ModelParams& p, Side side = Side::above, double lo = 1e-4,
                                       double hi = 1e-2, int points = 12) {
    if (side == Side::symmetric) throw invalid_parameter("dispersion_exponent_z is one-sided");
    const Phase ph = classify_phase(p, 1e-9);
    if (!is_boundary(ph)) throw invalid_parameter("dispersion_exponent_z: parameters are not on a critical line");
    const Boundary b = ph == Phase::cp1 ? Boundary::CP1 : ph == Phase::cp2 ? Boundary::CP2 : Boundary::CP3;
    double kc = critical_point(p, b).k_c;
    if (b != Boundary::CP1 && p.Gamma * (1 - p.alpha) < 0) kc = -kc;
    const double sgn = side == Side::above ? 1.0 : -1.0;
    const std::vector<double> ds = detail::geomspace(lo, hi, points);
    std::vector<double> eps;
    for (double d : ds) eps.push_back(std::abs(dispersion(p, kc + sgn * d)));
    return power_fit(ds, eps);
}

/// Analytic small-distance coefficients at a boundary: dispersion eps ~ disp (k-k_c)^z
/// and gap Delta ~ gap |lambda - lambda_c|, in the form given by the low-energy expansions
/// (CP1 uses eps(k=0) = 2|h - J| as the gap).
struct CriticalCoefficients {
    double dispersion = 0;
    double gap = 0;
};

inline CriticalCoefficients critical_coefficients(const ModelParams& p, Boundary b) {
    const double g = p.Gamma / p.J;
    CriticalCoefficients c;
    switch (b) {
        case Boundary::CP1:
            c.dispersion = p.J * (2 * std::sqrt(p.gamma * p.gamma + g * g * (1 + p.alpha) * (1 + p.alpha)) -
                                  2 * g * (1 - p.alpha));
            c.gap = 2;
            break;
        case Boundary::CP2: {
            const CriticalPoint cp = critical_point(p, b);
            const double hr = std::abs(p.h) / p.J;
            c.dispersion = p.J * std::sqrt(1 - hr * hr) / (g * (1 - cp.value));
            c.gap = p.J * 4 * g * std::sin(cp.k_c) / (1 - cp.value);
            break;
        }
        case Boundary::CP3: {
            const CriticalPoint cp = critical_point(p, b);
            const double hc = cp.value / p.J, s = std::sin(cp.k_c), co = std::cos(cp.k_c);
            const double G = g * (1 - p.alpha);
            c.dispersion = p.J * (G * co * co / (2 * s) + (1 / hc - hc) * (1 / hc - hc) / (2 * G * s));
            c.gap = 2 * (hc - 1 / hc) / (G * s);
            break;
        }
    }
    return c;
}

/// One-sided limits of -d^2 e0 / d alpha^2 at alpha_c +- offset; jump = right - left.
struct Discontinuity {
    int N = 0;
    double left = 0, right = 0, jump = 0;
};

inline std::vector<Discontinuity> discontinuity_probe(const ModelParams& p, double alpha_c, const std::vector<int>& sizes,
                                                      double offset = 1e-3, double step = 1e-3) {
    return detail::parallel_map<Discontinuity>(sizes.size(), [&](std::size_t i) {
        ModelParams q = p;
        q.N = sizes[i];
        auto curv = [&](double a) { return -energy_second_derivative(with(q, Param::alpha, a), Param::alpha, step).value; };
        Discontinuity d;
        d.N = sizes[i];
        d.left = curv(alpha_c - offset);
        d.right = curv(alpha_c + offset);
        d.jump = d.right - d.left;
        return d;
    });
}

}  // namespace gammachain

#endif
