#pragma once

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "qssy/errors.hpp"
#include "qssy/matrix.hpp"
#include "qssy/real_rep.hpp"
#include "qssy/vector.hpp"

namespace qssy {

// Orthogonal polar factor of a square invertible real matrix by the Newton
// iteration X <- (X + X^{-T}) / 2.
inline Eigen::MatrixXd polar_factor(const Eigen::MatrixXd& a, int max_iter = 100) {
    Eigen::MatrixXd x = a;
    for (int it = 0; it < max_iter; ++it) {
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(x);
        const Eigen::MatrixXd inv_t = lu.inverse().transpose();
        if (!inv_t.allFinite()) throw numerical_error("polar_factor: matrix is numerically singular");
        Eigen::MatrixXd next = 0.5 * (x + inv_t);
        const double change = (next - x).norm();
        x = std::move(next);
        if (change <= 1e-14 * x.norm()) return x;
    }
    throw numerical_error("polar_factor: Newton iteration did not converge in " + std::to_string(max_iter) + " steps");
}

// q1 = V U* p1 for A = U S V*, which makes the tridiagonal T real symmetric.
// V U* is the unitary polar factor of A*, found on the real representation
// (whose polar factor is again a real representation).
inline QuatVector symmetric_initial_q1(const QuatMatrix& a, const QuatVector& p1) {
    if (a.rows() != a.cols() || a.rows() != p1.size()) throw dimension_error("symmetric_initial_q1: shape mismatch");
    const Eigen::MatrixXd w = polar_factor(real_rep(a.adjoint()));
    return vector_from_rep_col(w * real_rep_col(p1));
}

} // namespace qssy
