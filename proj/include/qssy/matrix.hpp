#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qssy/counters.hpp"
#include "qssy/errors.hpp"
#include "qssy/quaternion.hpp"
#include "qssy/vector.hpp"

namespace qssy {

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

// Real compressed-row matrix. Duplicate triplets are summed; explicit zeros are dropped.
struct RealSparse {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> row_ptr{0};
    std::vector<std::size_t> col_idx;
    std::vector<double> values;

    static RealSparse from_triplets(std::size_t m, std::size_t n, std::vector<Triplet> t) {
        for (const Triplet& e : t)
            if (e.row >= m || e.col >= n) throw dimension_error("triplet outside matrix bounds");
        std::sort(t.begin(), t.end(),
                  [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
        RealSparse s;
        s.rows = m;
        s.cols = n;
        s.row_ptr.assign(m + 1, 0);
        for (std::size_t k = 0; k < t.size();) {
            std::size_t r = t[k].row, c = t[k].col;
            double v = 0.0;
            for (; k < t.size() && t[k].row == r && t[k].col == c; ++k) v += t[k].value;
            if (v == 0.0) continue;
            s.col_idx.push_back(c);
            s.values.push_back(v);
            ++s.row_ptr[r + 1];
        }
        for (std::size_t r = 0; r < m; ++r) s.row_ptr[r + 1] += s.row_ptr[r];
        return s;
    }

    static RealSparse from_dense(const Eigen::MatrixXd& d) {
        std::vector<Triplet> t;
        for (Eigen::Index i = 0; i < d.rows(); ++i)
            for (Eigen::Index j = 0; j < d.cols(); ++j)
                if (d(i, j) != 0.0) t.push_back({std::size_t(i), std::size_t(j), d(i, j)});
        return from_triplets(d.rows(), d.cols(), std::move(t));
    }

    static RealSparse empty(std::size_t m, std::size_t n) { return from_triplets(m, n, {}); }

    std::size_t nnz() const { return values.size(); }

    RealSparse scaled(double s) const {
        RealSparse out = *this;
        for (double& v : out.values) v *= s;
        if (s == 0.0) out = empty(rows, cols);
        return out;
    }

    RealSparse transposed() const {
        std::vector<Triplet> t;
        t.reserve(nnz());
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) t.push_back({col_idx[k], i, values[k]});
        return from_triplets(cols, rows, std::move(t));
    }

    double at(std::size_t i, std::size_t j) const {
        auto b = col_idx.begin() + row_ptr[i], e = col_idx.begin() + row_ptr[i + 1];
        auto it = std::lower_bound(b, e, j);
        return (it != e && *it == j) ? values[it - col_idx.begin()] : 0.0;
    }

    Eigen::MatrixXd to_dense() const {
        Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) d(i, col_idx[k]) = values[k];
        return d;
    }
};

enum class StorageKind { dense, sparse };

// M = M0 + M1 i + M2 j + M3 k with each real plane stored separately, either all
// dense (row-major) or all compressed-row. Sparse planes carry independent patterns.
class QuatMatrix {
public:
    QuatMatrix() = default;

    static QuatMatrix zeros(std::size_t m, std::size_t n) {
        QuatMatrix a;
        a.rows_ = m;
        a.cols_ = n;
        a.kind_ = StorageKind::dense;
        for (auto& p : a.dense_) p.assign(m * n, 0.0);
        return a;
    }

    static QuatMatrix identity(std::size_t n) {
        QuatMatrix a = zeros(n, n);
        for (std::size_t i = 0; i < n; ++i) a.dense_[0][i * n + i] = 1.0;
        return a;
    }

    static QuatMatrix from_dense_planes(const Eigen::MatrixXd& a0, const Eigen::MatrixXd& a1,
                                        const Eigen::MatrixXd& a2, const Eigen::MatrixXd& a3) {
        const std::array<const Eigen::MatrixXd*, 4> src{&a0, &a1, &a2, &a3};
        for (auto* p : src)
            if (p->rows() != a0.rows() || p->cols() != a0.cols())
                throw dimension_error("quaternion matrix planes must share dimensions");
        QuatMatrix a = zeros(a0.rows(), a0.cols());
        for (int c = 0; c < 4; ++c)
            for (std::size_t i = 0; i < a.rows_; ++i)
                for (std::size_t j = 0; j < a.cols_; ++j) a.dense_[c][i * a.cols_ + j] = (*src[c])(i, j);
        return a;
    }

    static QuatMatrix from_sparse_planes(RealSparse a0, RealSparse a1, RealSparse a2, RealSparse a3) {
        std::array<RealSparse, 4> src{std::move(a0), std::move(a1), std::move(a2), std::move(a3)};
        for (const auto& p : src)
            if (p.rows != src[0].rows || p.cols != src[0].cols)
                throw dimension_error("quaternion matrix planes must share dimensions");
        QuatMatrix a;
        a.rows_ = src[0].rows;
        a.cols_ = src[0].cols;
        a.kind_ = StorageKind::sparse;
        a.sparse_ = std::move(src);
        return a;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    StorageKind kind() const { return kind_; }

    Quaternion at(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw dimension_error("QuatMatrix index out of range");
        if (kind_ == StorageKind::dense) {
            const std::size_t k = i * cols_ + j;
            return {dense_[0][k], dense_[1][k], dense_[2][k], dense_[3][k]};
        }
        return {sparse_[0].at(i, j), sparse_[1].at(i, j), sparse_[2].at(i, j), sparse_[3].at(i, j)};
    }

    void set(std::size_t i, std::size_t j, const Quaternion& q) {
        if (kind_ != StorageKind::dense) throw state_error("set() requires dense storage");
        if (i >= rows_ || j >= cols_) throw dimension_error("QuatMatrix index out of range");
        const std::size_t k = i * cols_ + j;
        dense_[0][k] = q.w;
        dense_[1][k] = q.x;
        dense_[2][k] = q.y;
        dense_[3][k] = q.z;
    }

    // Plane c as a dense real matrix (any storage kind).
    Eigen::MatrixXd plane(int c) const {
        if (kind_ == StorageKind::sparse) return sparse_[c].to_dense();
        Eigen::MatrixXd d(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) d(i, j) = dense_[c][i * cols_ + j];
        return d;
    }

    const std::vector<double>& dense_plane(int c) const { return dense_[c]; }
    const RealSparse& sparse_plane(int c) const { return sparse_[c]; }

    std::size_t stored_entries() const {
        if (kind_ == StorageKind::dense) return 4 * rows_ * cols_;
        std::size_t s = 0;
        for (const auto& p : sparse_) s += p.nnz();
        return s;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (int c = 0; c < 4; ++c) {
            const std::vector<double>& v = kind_ == StorageKind::dense ? dense_[c] : sparse_[c].values;
            for (double x : v) s += x * x;
        }
        return std::sqrt(s);
    }

    QuatMatrix to_dense() const {
        if (kind_ == StorageKind::dense) return *this;
        return from_dense_planes(plane(0), plane(1), plane(2), plane(3));
    }

    // Conjugate transpose.
    QuatMatrix adjoint() const {
        if (kind_ == StorageKind::sparse)
            return from_sparse_planes(sparse_[0].transposed(), sparse_[1].transposed().scaled(-1.0),
                                      sparse_[2].transposed().scaled(-1.0), sparse_[3].transposed().scaled(-1.0));
        QuatMatrix a = zeros(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) a.set(j, i, qconj(at(i, j)));
        return a;
    }

    // Visits the stored entries of plane c in row i as f(col, value).
    template <class F>
    void for_row(int c, std::size_t i, F&& f) const {
        if (kind_ == StorageKind::dense) {
            const double* row = dense_[c].data() + i * cols_;
            for (std::size_t j = 0; j < cols_; ++j) f(j, row[j]);
        } else {
            const RealSparse& p = sparse_[c];
            for (std::size_t k = p.row_ptr[i]; k < p.row_ptr[i + 1]; ++k) f(p.col_idx[k], p.values[k]);
        }
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    StorageKind kind_ = StorageKind::dense;
    std::array<std::vector<double>, 4> dense_;
    std::array<RealSparse, 4> sparse_;
};

namespace detail {

// Basis products e_a * e_b = sign * e_target with e = (1, i, j, k).
constexpr int hamilton_target[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
constexpr double hamilton_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};

} // namespace detail

// y = A x via sixteen real plane products; R(A) is never formed.
inline QuatVector matvec(const QuatMatrix& a, const QuatVector& x) {
    if (a.cols() != x.size())
        throw dimension_error("matvec: matrix has " + std::to_string(a.cols()) + " columns, vector has " +
                              std::to_string(x.size()) + " entries");
    ++op_counters().matvec;
    QuatVector y(a.rows());
    const std::array<const double*, 4> xs{x.plane(0).data(), x.plane(1).data(), x.plane(2).data(),
                                          x.plane(3).data()};
    std::array<double*, 4> ys{y.plane(0).data(), y.plane(1).data(), y.plane(2).data(), y.plane(3).data()};
    [[maybe_unused]] std::uint64_t touches = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (int c = 0; c < 4; ++c) {
            double acc[4] = {0, 0, 0, 0};
            a.for_row(c, i, [&](std::size_t j, double v) {
                acc[0] += v * xs[0][j];
                acc[1] += v * xs[1][j];
                acc[2] += v * xs[2][j];
                acc[3] += v * xs[3][j];
#if QSSY_ENTRY_COUNTING
                touches += 4;
#endif
            });
            for (int l = 0; l < 4; ++l) ys[detail::hamilton_target[c][l]][i] += detail::hamilton_sign[c][l] * acc[l];
        }
    }
#if QSSY_ENTRY_COUNTING
    op_counters().plane_entry_updates += touches;
#endif
    return y;
}

// y = A* x, using the stored planes of A transposed on the fly.
inline QuatVector matvec_adj(const QuatMatrix& a, const QuatVector& x) {
    if (a.rows() != x.size())
        throw dimension_error("matvec_adj: matrix has " + std::to_string(a.rows()) + " rows, vector has " +
                              std::to_string(x.size()) + " entries");
    ++op_counters().matvec_adj;
    QuatVector y(a.cols());
    const std::array<const double*, 4> xs{x.plane(0).data(), x.plane(1).data(), x.plane(2).data(),
                                          x.plane(3).data()};
    std::array<double*, 4> ys{y.plane(0).data(), y.plane(1).data(), y.plane(2).data(), y.plane(3).data()};
    [[maybe_unused]] std::uint64_t touches = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double xi[4] = {xs[0][i], xs[1][i], xs[2][i], xs[3][i]};
        for (int c = 0; c < 4; ++c) {
            const double conj_sign = c == 0 ? 1.0 : -1.0;
            double* out[4];
            double w[4];
            for (int l = 0; l < 4; ++l) {
                out[l] = ys[detail::hamilton_target[c][l]];
                w[l] = conj_sign * detail::hamilton_sign[c][l] * xi[l];
            }
            a.for_row(c, i, [&](std::size_t j, double v) {
                out[0][j] += v * w[0];
                out[1][j] += v * w[1];
                out[2][j] += v * w[2];
                out[3][j] += v * w[3];
#if QSSY_ENTRY_COUNTING
                touches += 4;
#endif
            });
        }
    }
#if QSSY_ENTRY_COUNTING
    op_counters().plane_entry_updates += touches;
#endif
    return y;
}

// Dense quaternion product; test and small-scale use only.
inline QuatMatrix multiply(const QuatMatrix& a, const QuatMatrix& b) {
    if (a.cols() != b.rows()) throw dimension_error("multiply: inner dimensions differ");
    QuatMatrix c = QuatMatrix::zeros(a.rows(), b.cols());
    QuatMatrix ad = a.to_dense(), bd = b.to_dense();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Quaternion s;
            for (std::size_t k = 0; k < a.cols(); ++k) s += ad.at(i, k) * bd.at(k, j);
            c.set(i, j, s);
        }
    return c;
}

inline QuatMatrix add(const QuatMatrix& a, const QuatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw dimension_error("add: shapes differ");
    QuatMatrix c = QuatMatrix::zeros(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, a.at(i, j) + b.at(i, j));
    return c;
}

} // namespace qssy
