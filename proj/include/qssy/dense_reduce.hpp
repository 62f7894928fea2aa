#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "qssy/errors.hpp"
#include "qssy/matrix.hpp"
#include "qssy/quaternion.hpp"
#include "qssy/ssy.hpp"

namespace qssy {

struct DenseReduction {
    QuatMatrix P;
    QuatMatrix Q;
    StrictTridiagonal T;
};

namespace detail {

struct DenseQ {
    std::size_t rows = 0, cols = 0;
    std::vector<Quaternion> a;

    DenseQ(std::size_t m, std::size_t n) : rows(m), cols(n), a(m * n) {}
    Quaternion& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Quaternion& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static DenseQ identity(std::size_t n) {
        DenseQ d(n, n);
        for (std::size_t i = 0; i < n; ++i) d(i, i) = Quaternion{1.0};
        return d;
    }

    QuatMatrix to_matrix() const {
        QuatMatrix m = QuatMatrix::zeros(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.set(i, j, (*this)(i, j));
        return m;
    }
};

// Real reflector H = I - tau v v^T sending a nonnegative vector x to ||x|| e_1.
// Returns false when x already has that form.
inline bool reflector_to_positive_axis(const std::vector<double>& x, std::vector<double>& v, double& tau) {
    double tail = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) tail += x[i] * x[i];
    if (tail == 0.0) return false;
    const double mu = std::sqrt(x[0] * x[0] + tail);
    v = x;
    v[0] = -tail / (x[0] + mu);
    double vtv = 0.0;
    for (double e : v) vtv += e * e;
    tau = 2.0 / vtv;
    return true;
}

} // namespace detail

// Unitary P, Q with P* M Q = T strictly tridiagonal (real nonnegative off-diagonals).
//
// Level k alternates a column step and a row step on the working matrix W:
// the entries W(k+1.., k) are rotated onto the nonnegative reals by diagonal
// quaternion phases and then compressed by a real reflector acting on rows
// k+1..; the row W(k, k+1..) gets the same treatment from the right. Each phase
// is a symplectic Givens rotation of the real representation and each real
// reflector H acts there as H (+) H (+) H (+) H, so everything stays
// JRS-structured. Index 0 is never touched, hence P e_1 = Q e_1 = e_1.
inline DenseReduction dense_ssy_reduce(const QuatMatrix& m) {
    if (m.rows() != m.cols()) throw dimension_error("dense_ssy_reduce: matrix must be square");
    const std::size_t n = m.rows();
    detail::DenseQ w(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w(i, j) = m.at(i, j);
    detail::DenseQ P = detail::DenseQ::identity(n), Q = detail::DenseQ::identity(n);

    std::vector<double> x, v;
    double tau = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        // Column step: W <- U* W, P <- P U.
        x.assign(n - k - 1, 0.0);
        for (std::size_t r = k + 1; r < n; ++r) {
            const Quaternion u = qconj(qphase(w(r, k)));
            for (std::size_t j = 0; j < n; ++j) w(r, j) = u * w(r, j);
            const Quaternion uc = qconj(u);
            for (std::size_t i = 0; i < n; ++i) P(i, r) = P(i, r) * uc;
            x[r - k - 1] = w(r, k).w;
            w(r, k) = Quaternion{x[r - k - 1]};
        }
        if (detail::reflector_to_positive_axis(x, v, tau)) {
            for (std::size_t j = 0; j < n; ++j) {
                Quaternion s;
                for (std::size_t t = 0; t < v.size(); ++t) s += w(k + 1 + t, j) * v[t];
                for (std::size_t t = 0; t < v.size(); ++t) w(k + 1 + t, j) -= s * (tau * v[t]);
            }
            for (std::size_t i = 0; i < n; ++i) {
                Quaternion s;
                for (std::size_t t = 0; t < v.size(); ++t) s += P(i, k + 1 + t) * v[t];
                for (std::size_t t = 0; t < v.size(); ++t) P(i, k + 1 + t) -= s * (tau * v[t]);
            }
        }
        for (std::size_t r = k + 2; r < n; ++r) w(r, k) = Quaternion{};

        // Row step: W <- W V, Q <- Q V.
        x.assign(n - k - 1, 0.0);
        for (std::size_t c = k + 1; c < n; ++c) {
            const Quaternion vph = qconj(qphase(w(k, c)));
            for (std::size_t i = 0; i < n; ++i) {
                w(i, c) = w(i, c) * vph;
                Q(i, c) = Q(i, c) * vph;
            }
            x[c - k - 1] = w(k, c).w;
            w(k, c) = Quaternion{x[c - k - 1]};
        }
        if (detail::reflector_to_positive_axis(x, v, tau)) {
            for (std::size_t i = 0; i < n; ++i) {
                Quaternion s, sq;
                for (std::size_t t = 0; t < v.size(); ++t) {
                    s += w(i, k + 1 + t) * v[t];
                    sq += Q(i, k + 1 + t) * v[t];
                }
                for (std::size_t t = 0; t < v.size(); ++t) {
                    w(i, k + 1 + t) -= s * (tau * v[t]);
                    Q(i, k + 1 + t) -= sq * (tau * v[t]);
                }
            }
        }
        for (std::size_t c = k + 2; c < n; ++c) w(k, c) = Quaternion{};
    }

    DenseReduction out{P.to_matrix(), Q.to_matrix(), {}};
    for (std::size_t k = 0; k < n; ++k) out.T.alpha.push_back(w(k, k));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        out.T.beta.push_back(w(k + 1, k).w);
        out.T.gamma.push_back(w(k, k + 1).w);
    }
    return out;
}

} // namespace qssy
