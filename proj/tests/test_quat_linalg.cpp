#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "qssy/givens.hpp"
#include "qssy/matrix.hpp"
#include "qssy/problems/random.hpp"
#include "qssy/real_rep.hpp"
#include "qssy/vector.hpp"

using namespace qssy;

namespace {

// Entrywise quaternion multiply-accumulate; the oracle for the plane kernels.
QuatVector brute_matvec(const QuatMatrix& a, const QuatVector& x) {
    QuatVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Quaternion s;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a.at(i, j) * x[j];
        y.set(i, s);
    }
    return y;
}

QuatVector brute_matvec_adj(const QuatMatrix& a, const QuatVector& x) {
    QuatVector y(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        Quaternion s;
        for (std::size_t i = 0; i < a.rows(); ++i) s += qconj(a.at(i, j)) * x[i];
        y.set(j, s);
    }
    return y;
}

// Sparse matrix whose planes have independent random patterns.
QuatMatrix random_sparse(std::size_t n, double density, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> nd;
    std::array<std::vector<Triplet>, 4> t;
    for (int c = 0; c < 4; ++c)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (u(rng) < density) t[c].push_back({i, j, nd(rng)});
    return QuatMatrix::from_sparse_planes(RealSparse::from_triplets(n, n, t[0]), RealSparse::from_triplets(n, n, t[1]),
                                          RealSparse::from_triplets(n, n, t[2]), RealSparse::from_triplets(n, n, t[3]));
}

double max_entry(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

QuatMatrix one_by_one(const Quaternion& q) {
    QuatMatrix m = QuatMatrix::zeros(1, 1);
    m.set(0, 0, q);
    return m;
}

} // namespace

TEST(Inner, UnitVectors) {
    EXPECT_EQ(inner(unit_vector(3, 0), unit_vector(3, 0)), Quaternion{1.0});
    EXPECT_EQ(inner(unit_vector(3, 0), unit_vector(3, 1)), Quaternion{});
}

TEST(Inner, ConjugatesSecondArgument) {
    const QuatVector x{Quaternion::i()}, y{Quaternion::j()};
    // conj(j) i = -j i = k
    EXPECT_EQ(inner(x, y), Quaternion::k());
}

TEST(InnerProperty, RightLinearity) {
    Rng rng(21);
    for (int t = 0; t < 200; ++t) {
        const QuatVector x = random_vector(7, rng), y = random_vector(7, rng);
        const Quaternion a = random_quaternion(rng);
        const Quaternion lhs = inner(x * a, y), rhs = inner(x, y) * a;
        EXPECT_NEAR(qmod(lhs - rhs), 0.0, 16 * 2.2e-16 * std::max(1.0, qmod(rhs)) * 7);
    }
}

TEST(Norm, Examples) {
    EXPECT_EQ(norm2(QuatVector(4)), 0.0);
    EXPECT_DOUBLE_EQ(norm2(QuatVector{Quaternion(1, 1, 1, 1), Quaternion{}}), 2.0);
    Rng rng(2);
    const QuatVector x = random_vector(9, rng);
    double s = 0.0;
    for (int c = 0; c < 4; ++c)
        for (double v : x.plane(c)) s += v * v;
    EXPECT_NEAR(norm2(x), std::sqrt(s), 1e-14);
}

TEST(RealRep, ScalarOne) {
    EXPECT_EQ(real_rep(QuatMatrix::identity(1)), Eigen::MatrixXd::Identity(4, 4));
}

TEST(RealRep, ScalarI) {
    Eigen::MatrixXd expected(4, 4);
    expected << 0, 0, 1, 0, 0, 0, 0, -1, -1, 0, 0, 0, 0, 1, 0, 0;
    EXPECT_EQ(real_rep(one_by_one(Quaternion::i())), expected);
}

TEST(RealRep, FirstBlockColumn) {
    EXPECT_EQ(real_rep_col(one_by_one(Quaternion{1.0})), Eigen::Vector4d(1, 0, 0, 0));
    EXPECT_EQ(real_rep_col(one_by_one(Quaternion::i())), Eigen::Vector4d(0, 0, -1, 0));
    Rng rng(4);
    const QuatMatrix m = random_matrix(3, 5, rng);
    EXPECT_EQ(real_rep(m).leftCols(5), real_rep_col(m));
}

TEST(RealRep, VectorRoundTrip) {
    Rng rng(6);
    const QuatVector x = random_vector(6, rng);
    EXPECT_EQ(max_abs_diff(vector_from_rep_col(real_rep_col(x)), x), 0.0);
    const QuatMatrix m = random_matrix(4, 3, rng);
    const QuatMatrix back = matrix_from_real_rep(real_rep(m));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(back.at(i, j), m.at(i, j));
}

TEST(RealRepProperty, Homomorphism) {
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
        const QuatMatrix a = random_matrix(3, 3, rng), b = random_matrix(3, 3, rng);
        EXPECT_LT(max_entry(real_rep(multiply(a, b)) - real_rep(a) * real_rep(b)), 1e-12);
        EXPECT_LT(max_entry(real_rep(add(a, b)) - real_rep(a) - real_rep(b)), 1e-15);
        EXPECT_LT(max_entry(real_rep(a.adjoint()) - real_rep(a).transpose()), 1e-15);
    }
}

TEST(RealRepProperty, MatvecAgreesWithRealProduct) {
    Rng rng(10);
    const QuatMatrix a = random_matrix(5, 4, rng);
    const QuatVector x = random_vector(4, rng);
    EXPECT_LT((real_rep_col(matvec(a, x)) - real_rep(a) * real_rep_col(x)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Jrs, Examples) {
    Rng rng(12);
    EXPECT_TRUE(jrs_check(real_rep(random_matrix(4, 4, rng))));
    EXPECT_TRUE(jrs_check(Eigen::MatrixXd::Identity(4, 4)));
    RealRep w = real_rep(random_matrix(3, 3, rng));
    w(1, 2) += 1.0;
    EXPECT_FALSE(jrs_check(w));
    EXPECT_GT(jrs_defect(w), 0.5);
}

TEST(Jrs, RejectsGenericRealMatrix) {
    Rng rng(14);
    std::normal_distribution<double> nd;
    Eigen::MatrixXd w(8, 8);
    for (Eigen::Index i = 0; i < 8; ++i)
        for (Eigen::Index j = 0; j < 8; ++j) w(i, j) = nd(rng);
    EXPECT_FALSE(jrs_check(w));
}

TEST(Upsilon, MatchesRealRepresentationSolve) {
    Rng rng(16);
    const QuatMatrix a = random_well_conditioned(6, rng);
    const QuatVector b = random_vector(6, rng);
    const QuatVector x = real_direct_solve(a, b);
    EXPECT_LT(norm2(matvec(a, x) - b) / norm2(b), 1e-13);
    // Independent route: solve the full real representation system.
    const Eigen::VectorXd xr = real_rep(a).partialPivLu().solve(real_rep_col(b));
    EXPECT_LT(norm2(vector_from_rep_col(xr) - x) / norm2(x), 1e-12);
}

TEST(Matvec, Examples) {
    Rng rng(18);
    const QuatVector x = random_vector(5, rng);
    EXPECT_EQ(max_abs_diff(matvec(QuatMatrix::identity(5), x), x), 0.0);
    EXPECT_EQ(max_abs_diff(matvec_adj(QuatMatrix::identity(5), x), x), 0.0);
    EXPECT_EQ(matvec(one_by_one(Quaternion::i()), QuatVector{Quaternion::j()})[0], Quaternion::k());
    EXPECT_EQ(matvec_adj(one_by_one(Quaternion::i()), QuatVector{Quaternion::k()})[0], Quaternion::j());
}

TEST(Matvec, SparseMatchesBruteForce) {
    Rng rng(20);
    const QuatMatrix a = random_sparse(20, 0.2, rng);
    const QuatVector x = random_vector(20, rng);
    EXPECT_LT(max_abs_diff(matvec(a, x), brute_matvec(a, x)), 1e-13);
    EXPECT_LT(max_abs_diff(matvec_adj(a, x), brute_matvec_adj(a, x)), 1e-13);
}

TEST(Matvec, DenseAdjointMatchesBruteForce) {
    Rng rng(22);
    const QuatMatrix a = random_matrix(15, 15, rng);
    const QuatVector x = random_vector(15, rng);
    EXPECT_LT(max_abs_diff(matvec(a, x), brute_matvec(a, x)), 1e-13);
    EXPECT_LT(max_abs_diff(matvec_adj(a, x), brute_matvec_adj(a, x)), 1e-13);
    EXPECT_LT(max_abs_diff(matvec_adj(a, x), matvec(a.adjoint(), x)), 1e-13);
}

TEST(Matvec, RectangularShapes) {
    Rng rng(24);
    const QuatMatrix a = random_matrix(7, 3, rng);
    EXPECT_EQ(matvec(a, random_vector(3, rng)).size(), 7u);
    EXPECT_EQ(matvec_adj(a, random_vector(7, rng)).size(), 3u);
    EXPECT_THROW(matvec(a, random_vector(7, rng)), dimension_error);
    EXPECT_THROW(matvec_adj(a, random_vector(3, rng)), dimension_error);
}

TEST(MatvecProperty, Adjointness) {
    Rng rng(26);
    for (int t = 0; t < 30; ++t) {
        const QuatMatrix a = t % 2 ? random_matrix(9, 9, rng) : random_sparse(9, 0.3, rng);
        const QuatVector x = random_vector(9, rng), y = random_vector(9, rng);
        const Quaternion lhs = inner(matvec(a, x), y), rhs = inner(x, matvec_adj(a, y));
        EXPECT_LT(qmod(lhs - rhs), 1e-12 * std::max(1.0, qmod(lhs)));
    }
}

TEST(MatvecProperty, TouchesEachStoredEntryFourTimes) {
    Rng rng(28);
    const QuatMatrix a = random_sparse(30, 0.1, rng);
    const QuatVector x = random_vector(30, rng);
    reset_op_counters();
    (void)matvec(a, x);
    EXPECT_EQ(op_counters().plane_entry_updates, 4 * a.stored_entries());
    EXPECT_EQ(op_counters().matvec, 1u);
    reset_op_counters();
    (void)matvec_adj(a, x);
    EXPECT_EQ(op_counters().plane_entry_updates, 4 * a.stored_entries());
    EXPECT_EQ(op_counters().matvec_adj, 1u);
}

TEST(Matrix, SparsePlanesKeepIndependentPatterns) {
    // Zero real part, only a k plane.
    const RealSparse k = RealSparse::from_triplets(2, 2, {{0, 1, 2.0}});
    const QuatMatrix a = QuatMatrix::from_sparse_planes(RealSparse::empty(2, 2), RealSparse::empty(2, 2),
                                                        RealSparse::empty(2, 2), k);
    EXPECT_EQ(a.stored_entries(), 1u);
    EXPECT_EQ(a.at(0, 1), Quaternion(0, 0, 0, 2));
    EXPECT_EQ(a.at(1, 0), Quaternion{});
}

TEST(Matrix, TripletsSumDuplicates) {
    const RealSparse s = RealSparse::from_triplets(2, 2, {{0, 0, 1.0}, {0, 0, 2.5}, {1, 1, 0.0}});
    EXPECT_EQ(s.nnz(), 1u);
    EXPECT_EQ(s.at(0, 0), 3.5);
}

TEST(Givens, ColumnExamples) {
    ColumnRotation r = quat_givens(Quaternion{1.0}, Quaternion{});
    EXPECT_EQ(r.g.c, 1.0);
    EXPECT_EQ(r.g.s, Quaternion{});
    EXPECT_EQ(r.xi, Quaternion{1.0});

    r = quat_givens(Quaternion{}, Quaternion::j());
    EXPECT_EQ(r.g.c, 0.0);
    EXPECT_EQ(r.g.s, Quaternion{1.0});
    EXPECT_EQ(r.xi, Quaternion::j());

    r = quat_givens(Quaternion{3.0}, Quaternion{4.0});
    EXPECT_DOUBLE_EQ(r.g.c, 0.6);
    EXPECT_NEAR(qmod(r.g.s - Quaternion{0.8}), 0.0, 1e-16);
    EXPECT_NEAR(qmod(r.xi - Quaternion{5.0}), 0.0, 1e-15);

    EXPECT_THROW(quat_givens(Quaternion{}, Quaternion{}), std::domain_error);
}

TEST(Givens, RowExamples) {
    RowRotation r = quat_givens_row(Quaternion{1.0}, Quaternion{});
    EXPECT_EQ(r.c, 1.0);
    EXPECT_EQ(r.s, Quaternion{});
    EXPECT_EQ(r.xi, Quaternion{1.0});

    r = quat_givens_row(Quaternion{}, Quaternion{1.0});
    EXPECT_EQ(r.c, 0.0);
    EXPECT_EQ(r.s, Quaternion{1.0});

    r = quat_givens_row(Quaternion{3.0}, Quaternion{4.0});
    EXPECT_DOUBLE_EQ(r.c, 0.6);
    EXPECT_NEAR(qmod(r.s - Quaternion{0.8}), 0.0, 1e-16);
    EXPECT_NEAR(qmod(r.xi - Quaternion{5.0}), 0.0, 1e-15);
}

TEST(GivensProperty, AnnihilatesAndIsUnitary) {
    Rng rng(30);
    for (int t = 0; t < 500; ++t) {
        const Quaternion x1 = random_quaternion(rng), x2 = random_quaternion(rng);
        const ColumnRotation r = quat_givens(x1, x2);
        EXPECT_NEAR(r.g.c * r.g.c + qnorm_sq(r.g.s), 1.0, 4 * 2.2e-16);
        // [c, s; -conj(s), c] (x1, x2)^T = (xi, 0)^T
        const Quaternion top = r.g.c * x1 + r.g.s * x2;
        const Quaternion bottom = -(qconj(r.g.s) * x1) + r.g.c * x2;
        const double scale = std::hypot(qmod(x1), qmod(x2));
        EXPECT_LT(qmod(top - r.xi), 1e-14 * scale);
        EXPECT_LT(qmod(bottom), 1e-14 * scale);
        EXPECT_NEAR(qmod(r.xi), scale, 1e-14 * scale);

        const RowRotation rr = quat_givens_row(x1, x2);
        EXPECT_NEAR(rr.c * rr.c + qnorm_sq(rr.s), 1.0, 4 * 2.2e-16);
        // [y1, y2] [c, s; conj(s), -c] = [xi, 0]
        EXPECT_LT(qmod(x1 * rr.c + x2 * qconj(rr.s) - rr.xi), 1e-14 * scale);
        EXPECT_LT(qmod(x1 * rr.s - x2 * rr.c), 1e-14 * scale);
    }
}

TEST(GivensProperty, RealRepresentationIsOrthogonalAndStructured) {
    Rng rng(32);
    for (int t = 0; t < 20; ++t) {
        const ColumnRotation r = quat_givens(random_quaternion(rng), random_quaternion(rng));
        QuatMatrix g = QuatMatrix::zeros(2, 2);
        g.set(0, 0, Quaternion{r.g.c});
        g.set(0, 1, r.g.s);
        g.set(1, 0, -qconj(r.g.s));
        g.set(1, 1, Quaternion{r.g.c});
        const RealRep w = real_rep(g);
        EXPECT_LT(max_entry(w.transpose() * w - Eigen::MatrixXd::Identity(8, 8)), 1e-13);
        EXPECT_TRUE(jrs_check(w));
    }
}
