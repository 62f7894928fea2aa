#pragma once

#include <cmath>
#include <cstddef>

#include <Eigen/Dense>

#include "qssy/errors.hpp"
#include "qssy/matrix.hpp"
#include "qssy/vector.hpp"

// The 4m x 4n real representation R(M). Block layout, block rows top to bottom:
//   [ M0  M2  M1  M3]
//   [-M2  M0  M3 -M1]
//   [-M1 -M3  M0  M2]
//   [-M3  M1 -M2  M0]
// Only tests and oracles build it; the solvers work on planes.

namespace qssy {

using RealRep = Eigen::MatrixXd;

namespace detail {

// Plane index and sign of block (r, c) in R(M).
constexpr int rep_plane[4][4] = {{0, 2, 1, 3}, {2, 0, 3, 1}, {1, 3, 0, 2}, {3, 1, 2, 0}};
constexpr double rep_sign[4][4] = {{1, 1, 1, 1}, {-1, 1, 1, -1}, {-1, -1, 1, 1}, {-1, 1, -1, 1}};

} // namespace detail

inline RealRep real_rep(const QuatMatrix& m) {
    const Eigen::Index r = m.rows(), c = m.cols();
    RealRep w(4 * r, 4 * c);
    const Eigen::MatrixXd planes[4] = {m.plane(0), m.plane(1), m.plane(2), m.plane(3)};
    for (int br = 0; br < 4; ++br)
        for (int bc = 0; bc < 4; ++bc)
            w.block(br * r, bc * c, r, c) = detail::rep_sign[br][bc] * planes[detail::rep_plane[br][bc]];
    return w;
}

// First block column [M0; -M2; -M1; -M3].
inline Eigen::MatrixXd real_rep_col(const QuatMatrix& m) {
    const Eigen::Index r = m.rows();
    Eigen::MatrixXd w(4 * r, m.cols());
    w.middleRows(0, r) = m.plane(0);
    w.middleRows(r, r) = -m.plane(2);
    w.middleRows(2 * r, r) = -m.plane(1);
    w.middleRows(3 * r, r) = -m.plane(3);
    return w;
}

inline Eigen::VectorXd real_rep_col(const QuatVector& x) {
    const Eigen::Index n = x.size();
    Eigen::VectorXd v(4 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = x.plane(0)[i];
        v(n + i) = -x.plane(2)[i];
        v(2 * n + i) = -x.plane(1)[i];
        v(3 * n + i) = -x.plane(3)[i];
    }
    return v;
}

// Inverse of real_rep_col for a vector slab.
inline QuatVector vector_from_rep_col(const Eigen::VectorXd& v) {
    if (v.size() % 4 != 0) throw dimension_error("real representation length must be a multiple of 4");
    const Eigen::Index n = v.size() / 4;
    QuatVector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x.set(i, {v(i), -v(2 * n + i), -v(n + i), -v(3 * n + i)});
    return x;
}

// Recovers M from any 4m x 4n matrix by reading its first block column.
inline QuatMatrix matrix_from_real_rep(const RealRep& w) {
    if (w.rows() % 4 != 0 || w.cols() % 4 != 0)
        throw dimension_error("real representation dimensions must be multiples of 4");
    const Eigen::Index r = w.rows() / 4, c = w.cols() / 4;
    return QuatMatrix::from_dense_planes(w.block(0, 0, r, c), -w.block(2 * r, 0, r, c), -w.block(r, 0, r, c),
                                         -w.block(3 * r, 0, r, c));
}

namespace detail {

// A block signed permutation P with P[a] = sign[a] * I at block column perm[a].
struct BlockPerm {
    int perm[4];
    double sign[4];
};

constexpr BlockPerm jrs_J{{2, 3, 0, 1}, {-1, -1, 1, 1}};
constexpr BlockPerm jrs_R{{1, 0, 3, 2}, {-1, 1, 1, -1}};
constexpr BlockPerm jrs_S{{3, 2, 1, 0}, {-1, 1, -1, 1}};

// max |P W P^T - W| without forming P.
inline double conjugation_defect(const RealRep& w, const BlockPerm& p) {
    const Eigen::Index r = w.rows() / 4, c = w.cols() / 4;
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const double s = p.sign[a] * p.sign[b];
            worst = std::max(worst, (s * w.block(p.perm[a] * r, p.perm[b] * c, r, c) - w.block(a * r, b * c, r, c))
                                        .cwiseAbs()
                                        .maxCoeff());
        }
    return worst;
}

} // namespace detail

// Largest deviation from J W J^T = W, R W R^T = W, S W S^T = W.
inline double jrs_defect(const RealRep& w) {
    if (w.rows() % 4 != 0 || w.cols() % 4 != 0) throw dimension_error("jrs_check: dimensions must be multiples of 4");
    if (w.size() == 0) return 0.0;
    return std::max({detail::conjugation_defect(w, detail::jrs_J), detail::conjugation_defect(w, detail::jrs_R),
                     detail::conjugation_defect(w, detail::jrs_S)});
}

inline bool jrs_check(const RealRep& w, double tol = 1e-12) { return jrs_defect(w) <= tol; }

// Left-multiplication matrix of A acting on [x0; x1; x2; x3]; block rows
//   [A0 -A1 -A2 -A3], [A1 A0 -A3 A2], [A2 A3 A0 -A1], [A3 -A2 A1 A0].
inline Eigen::MatrixXd upsilon(const QuatMatrix& a) {
    const Eigen::Index r = a.rows(), c = a.cols();
    const Eigen::MatrixXd p[4] = {a.plane(0), a.plane(1), a.plane(2), a.plane(3)};
    Eigen::MatrixXd u(4 * r, 4 * c);
    const int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    const double sg[4][4] = {{1, -1, -1, -1}, {1, 1, -1, 1}, {1, 1, 1, -1}, {1, -1, 1, 1}};
    for (int br = 0; br < 4; ++br)
        for (int bc = 0; bc < 4; ++bc) u.block(br * r, bc * c, r, c) = sg[br][bc] * p[idx[br][bc]];
    return u;
}

inline Eigen::VectorXd upsilon_col(const QuatVector& x) {
    const Eigen::Index n = x.size();
    Eigen::VectorXd v(4 * n);
    for (int c = 0; c < 4; ++c)
        for (Eigen::Index i = 0; i < n; ++i) v(c * n + i) = x.plane(c)[i];
    return v;
}

inline QuatVector vector_from_upsilon_col(const Eigen::VectorXd& v) {
    const Eigen::Index n = v.size() / 4;
    QuatVector x(n);
    for (int c = 0; c < 4; ++c)
        for (Eigen::Index i = 0; i < n; ++i) x.plane(c)[i] = v(c * n + i);
    return x;
}

// Dense direct solve of A x = b through the 4n x 4n real system; reference oracle.
inline QuatVector real_direct_solve(const QuatMatrix& a, const QuatVector& b) {
    if (a.rows() != a.cols() || a.rows() != b.size()) throw dimension_error("real_direct_solve: shape mismatch");
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(upsilon(a));
    return vector_from_upsilon_col(lu.solve(upsilon_col(b)));
}

} // namespace qssy
