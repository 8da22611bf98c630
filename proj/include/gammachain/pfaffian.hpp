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

#ifndef GAMMACHAIN_PFAFFIAN_HPP
#define GAMMACHAIN_PFAFFIAN_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "numerics.hpp"

namespace gammachain {

/// Pf = sign * exp(log_magnitude). sign is -1, 0 or +1 for real input and a unit
/// phase (or 0) for complex input.
template <class Scalar>
struct PfaffianResult {
    Scalar sign = Scalar(1);
    double log_magnitude = 0;

    Scalar value() const { return sign == Scalar(0) ? Scalar(0) : sign * std::exp(log_magnitude); }
};

template <class Scalar>
using SkewMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Throws unless M is square, even-dimensional and antisymmetric to rel_tol of its largest entry.
template <class Derived>
void check_skew(const Eigen::MatrixBase<Derived>& M, double rel_tol = 1e-12) {
    if (M.rows() != M.cols()) throw invalid_parameter("pfaffian: matrix is not square");
    if (M.rows() % 2 != 0) throw invalid_parameter("pfaffian: odd dimension " + std::to_string(M.rows()));
    if (M.size() == 0) return;
    const double scale = M.cwiseAbs().maxCoeff();
    const double asym = (M + M.transpose()).cwiseAbs().maxCoeff();
    if (asym > rel_tol * scale)
        throw invalid_parameter("pfaffian: antisymmetry violated by " + std::to_string(asym));
}

/// Pfaffian by Parlett-Reid elimination with partial pivoting: each step reduces the
/// leading 2x2 block, pivoting the largest entry of the column into place.
template <class Derived>
PfaffianResult<typename Derived::Scalar> pfaffian(const Eigen::MatrixBase<Derived>& M) {
    using Scalar = typename Derived::Scalar;
    check_skew(M);
    SkewMatrix<Scalar> A = M;
    const Eigen::Index n = A.rows();
    PfaffianResult<Scalar> res;
    for (Eigen::Index k = 0; k + 1 < n; k += 2) {
        Eigen::Index kp;
        const double pivot = A.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&kp);
        kp += k + 1;
        if (pivot == 0) {
            res.sign = Scalar(0);
            res.log_magnitude = -std::numeric_limits<double>::infinity();
            return res;
        }
        if (kp != k + 1) {
            A.row(k + 1).swap(A.row(kp));
            A.col(k + 1).swap(A.col(kp));
            res.sign = -res.sign;
        }
        const Scalar a = A(k, k + 1);
        res.sign *= a / std::abs(a);
        res.log_magnitude += std::log(std::abs(a));
        if (k + 2 < n) {
            const Eigen::Index m = n - k - 2;
            Eigen::Matrix<Scalar, Eigen::Dynamic, 1> tau = A.row(k).tail(m).transpose() / a;
            Eigen::Matrix<Scalar, Eigen::Dynamic, 1> col = A.col(k + 1).tail(m);
            A.bottomRightCorner(m, m) += tau * col.transpose() - col * tau.transpose();
        }
    }
    return res;
}

template <class Scalar>
std::vector<PfaffianResult<Scalar>> pfaffian_batch(const std::vector<SkewMatrix<Scalar>>& mats) {
    return detail::parallel_map<PfaffianResult<Scalar>>(mats.size(), [&](std::size_t i) { return pfaffian(mats[i]); });
}

}  // namespace gammachain

#endif
