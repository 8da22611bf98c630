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

#ifndef GAMMACHAIN_PHASE_DIAGRAM_HPP
#define GAMMACHAIN_PHASE_DIAGRAM_HPP

#include <cmath>
#include <vector>

#include "model.hpp"
#include "numerics.hpp"

namespace gammachain {

struct PhasePoint {
    double alpha = 0, h = 0;
    double signed_min = 0, gap = 0;
    Phase phase = Phase::afm_I;
};

/// Row-major grid over alpha (outer) and h (inner).
inline std::vector<PhasePoint> phase_grid(const ModelParams& base, const std::vector<double>& alphas,
                                          const std::vector<double>& hs) {
    const std::size_t nh = hs.size();
    return detail::parallel_map<PhasePoint>(alphas.size() * nh, [&](std::size_t idx) {
        ModelParams p = base;
        p.alpha = alphas[idx / nh];
        p.h = hs[idx % nh];
        const GapResult g = excitation_gap(p);
        return PhasePoint{p.alpha, p.h, g.signed_min, g.gap, classify_phase(p)};
    });
}

enum class ContourKind { gap_minimum, sign_change };

struct ContourPoint {
    double alpha = 0, h = 0;
    ContourKind kind = ContourKind::sign_change;
};

/// Zero-gap contour of a phase grid, refined on the continuum spectrum: sign changes of
/// the signed minimum along either axis are bisected, and interior minima of the gap
/// along h that dip below the neighbouring values are golden-section refined and kept
/// if the gap there vanishes.
inline std::vector<ContourPoint> zero_gap_contour(const ModelParams& base, const std::vector<double>& alphas,
                                                  const std::vector<double>& hs,
                                                  const std::vector<PhasePoint>& grid) {
    const std::size_t na = alphas.size(), nh = hs.size();
    auto at = [&](std::size_t i, std::size_t j) -> const PhasePoint& { return grid[i * nh + j]; };
    auto smin = [&](double a, double h) {
        ModelParams p = base;
        p.alpha = a;
        p.h = h;
        return excitation_gap(p).signed_min;
    };
    auto gap = [&](double a, double h) {
        ModelParams p = base;
        p.alpha = a;
        p.h = h;
        return excitation_gap(p).gap;
    };
    std::vector<ContourPoint> out;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j + 1 < nh; ++j) {
            if ((at(i, j).signed_min < 0) != (at(i, j + 1).signed_min < 0)) {
                const double a = alphas[i];
                out.push_back({a, detail::bisect([&](double h) { return smin(a, h); }, hs[j], hs[j + 1], 1e-10),
                               ContourKind::sign_change});
            }
            if (j >= 1 && at(i, j).signed_min > 0 && at(i, j).gap <= at(i, j - 1).gap &&
                at(i, j).gap <= at(i, j + 1).gap) {
                const double a = alphas[i];
                auto [h, g] = detail::golden_minimize([&](double x) { return gap(a, x); }, hs[j - 1], hs[j + 1], 1e-10);
                if (g < 1e-6) out.push_back({a, h, ContourKind::gap_minimum});
            }
        }
    for (std::size_t j = 0; j < nh; ++j)
        for (std::size_t i = 0; i + 1 < na; ++i)
            if ((at(i, j).signed_min < 0) != (at(i + 1, j).signed_min < 0)) {
                const double h = hs[j];
                out.push_back({detail::bisect([&](double a) { return smin(a, h); }, alphas[i], alphas[i + 1], 1e-10), h,
                               ContourKind::sign_change});
            }
    return out;
}

}  // namespace gammachain

#endif
