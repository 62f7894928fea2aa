#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "qssy/quaternion.hpp"
#include "qssy/problems/random.hpp"

using namespace qssy;

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

void expect_quat_eq(const Quaternion& a, const Quaternion& b, double tol) {
    EXPECT_NEAR(a.w, b.w, tol);
    EXPECT_NEAR(a.x, b.x, tol);
    EXPECT_NEAR(a.y, b.y, tol);
    EXPECT_NEAR(a.z, b.z, tol);
}

// Eigen's quaternion product uses the same Hamilton convention.
Quaternion eigen_mul(const Quaternion& a, const Quaternion& b) {
    const Eigen::Quaterniond ea(a.w, a.x, a.y, a.z), eb(b.w, b.x, b.y, b.z);
    const Eigen::Quaterniond p = ea * eb;
    return {p.w(), p.x(), p.y(), p.z()};
}

} // namespace

TEST(Quaternion, BasisProducts) {
    const Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
    EXPECT_EQ(i * j, k);
    EXPECT_EQ(j * i, -k);
    EXPECT_EQ(j * k, i);
    EXPECT_EQ(k * i, j);
    EXPECT_EQ(i * i, Quaternion{-1.0});
    EXPECT_EQ(j * j, Quaternion{-1.0});
    EXPECT_EQ(k * k, Quaternion{-1.0});
    EXPECT_EQ(i * j * k, Quaternion{-1.0});
}

TEST(Quaternion, WorkedProducts) {
    const Quaternion q{0.5, -1.25, 2.0, 3.5};
    EXPECT_EQ(qmul(q, Quaternion{1.0}), q);
    EXPECT_EQ(qmul(Quaternion{1.0}, q), q);
    EXPECT_EQ(qmul(Quaternion(1, 1, 0, 0), Quaternion(1, 0, 1, 0)), Quaternion(1, 1, 1, 1));
}

TEST(Quaternion, ProductMatchesIndependentOracle) {
    Rng rng(11);
    for (int t = 0; t < 1000; ++t) {
        const Quaternion a = random_quaternion(rng), b = random_quaternion(rng);
        expect_quat_eq(qmul(a, b), eigen_mul(a, b), 1e-14);
    }
}

TEST(Quaternion, Conjugate) {
    EXPECT_EQ(qconj(Quaternion(1, 2, 3, 4)), Quaternion(1, -2, -3, -4));
    EXPECT_EQ(qconj(Quaternion{-2.5}), Quaternion{-2.5});
}

TEST(Quaternion, Modulus) {
    EXPECT_EQ(qmod(Quaternion{}), 0.0);
    EXPECT_DOUBLE_EQ(qmod(Quaternion(1, 1, 1, 1)), 2.0);
    const Quaternion q{0.3, -1.7, 2.2, 0.9};
    EXPECT_EQ(qnorm_sq(q), q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
    EXPECT_DOUBLE_EQ(qmod(q) * qmod(q), qnorm_sq(q));
}

TEST(Quaternion, Inverse) {
    EXPECT_EQ(qinv(Quaternion::i()), -Quaternion::i());
    EXPECT_EQ(qinv(Quaternion{2.0}), Quaternion{0.5});
    expect_quat_eq(qinv(Quaternion(1, 1, 1, 1)), Quaternion(0.25, -0.25, -0.25, -0.25), 1e-16);
    EXPECT_THROW(qinv(Quaternion{}), std::domain_error);
}

TEST(QuaternionProperty, InverseIsTwoSided) {
    Rng rng(3);
    for (int t = 0; t < 10000; ++t) {
        const Quaternion q = random_quaternion(rng);
        expect_quat_eq(q * qinv(q), Quaternion{1.0}, 4 * eps * 4);
        expect_quat_eq(qinv(q) * q, Quaternion{1.0}, 4 * eps * 4);
    }
}

TEST(QuaternionProperty, Associativity) {
    Rng rng(5);
    for (int t = 0; t < 10000; ++t) {
        const Quaternion a = random_quaternion(rng), b = random_quaternion(rng), c = random_quaternion(rng);
        const double scale = qmod(a) * qmod(b) * qmod(c);
        expect_quat_eq((a * b) * c, a * (b * c), 16 * eps * std::max(1.0, scale));
    }
}

TEST(QuaternionProperty, ConjugationReversesProducts) {
    Rng rng(7);
    for (int t = 0; t < 10000; ++t) {
        const Quaternion p = random_quaternion(rng), q = random_quaternion(rng);
        expect_quat_eq(qconj(p * q), qconj(q) * qconj(p), 8 * eps * std::max(1.0, qmod(p) * qmod(q)));
    }
}

TEST(QuaternionProperty, ModulusIsMultiplicative) {
    Rng rng(9);
    for (int t = 0; t < 10000; ++t) {
        const Quaternion p = random_quaternion(rng), q = random_quaternion(rng);
        const double lhs = qmod(p * q), rhs = qmod(p) * qmod(q);
        EXPECT_NEAR(lhs, rhs, 8 * eps * rhs);
    }
}

TEST(QuaternionProperty, RealScalarsCommute) {
    Rng rng(13);
    for (int t = 0; t < 100; ++t) {
        const Quaternion q = random_quaternion(rng);
        const Quaternion r{1.75};
        EXPECT_EQ(r * q, q * r);
        EXPECT_EQ(q * 1.75, r * q);
    }
}

TEST(Quaternion, Phase) {
    EXPECT_EQ(qphase(Quaternion{}), Quaternion{1.0});
    EXPECT_DOUBLE_EQ(qmod(qphase(Quaternion(3, -4, 12, 0))), 1.0);
    expect_quat_eq(qphase(Quaternion(0, 0, -2, 0)), -Quaternion::j(), 0.0);
}

TEST(Quaternion, ToStringUsesComponentOrder) {
    EXPECT_EQ(to_string(Quaternion(1, -2, 3, -4)), "1-2i+3j-4k");
}
