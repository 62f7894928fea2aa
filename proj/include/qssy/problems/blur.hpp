#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qssy/matrix.hpp"

namespace qssy {

// b_ij = exp(-(i-j)^2 / (2 sigma^2)) / (sigma sqrt(2 pi)) for |i-j| <= r.
inline Eigen::MatrixXd gaussian_toeplitz(std::size_t n, double sigma, std::size_t r) {
    if (n < 1 || !(sigma > 0.0)) throw std::invalid_argument("gaussian_toeplitz: need n >= 1 and sigma > 0");
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    const double scale = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double d = double(i) - double(j);
            if (std::abs(d) <= double(r)) b(i, j) = scale * std::exp(-d * d / (2.0 * sigma * sigma));
        }
    return b;
}

// b_ij = 1 / (2s - 1) for |i-j| <= s.
inline Eigen::MatrixXd uniform_toeplitz(std::size_t n, std::size_t s) {
    if (n < 1 || s < 1) throw std::invalid_argument("uniform_toeplitz: need n >= 1 and s >= 1");
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    const double v = 1.0 / (2.0 * double(s) - 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(double(i) - double(j)) <= double(s)) b(i, j) = v;
    return b;
}

// B1 (x) B2 as a sparse matrix; row index i1 * n2 + i2.
inline RealSparse kron_sparse(const Eigen::MatrixXd& b1, const Eigen::MatrixXd& b2) {
    std::vector<Triplet> t;
    for (Eigen::Index i1 = 0; i1 < b1.rows(); ++i1)
        for (Eigen::Index j1 = 0; j1 < b1.cols(); ++j1) {
            if (b1(i1, j1) == 0.0) continue;
            for (Eigen::Index i2 = 0; i2 < b2.rows(); ++i2)
                for (Eigen::Index j2 = 0; j2 < b2.cols(); ++j2)
                    if (b2(i2, j2) != 0.0)
                        t.push_back({std::size_t(i1 * b2.rows() + i2), std::size_t(j1 * b2.cols() + j2),
                                     b1(i1, j1) * b2(i2, j2)});
        }
    return RealSparse::from_triplets(b1.rows() * b2.rows(), b1.cols() * b2.cols(), std::move(t));
}

inline QuatMatrix scale_to_quaternion(const RealSparse& a0, double s1, double s2, double s3) {
    return QuatMatrix::from_sparse_planes(a0, a0.scaled(s1), a0.scaled(s2), a0.scaled(s3));
}

// Cross-channel blur on n x n images: A0 = B1 (x) B2 with Gaussian B1 and
// uniform B2, and planes (A0, f1 A0, f2 A0, f3 A0). With column-major image
// vectorization, A0 vec(X) = vec(B2 X B1^T).
inline QuatMatrix multichannel_blur(std::size_t n, double sigma = 1.0, std::size_t r = 4, std::size_t s = 7,
                                    double f1 = 1.0, double f2 = 1.5, double f3 = 2.0) {
    if (n < 2) throw std::invalid_argument("multichannel_blur: n must be at least 2");
    return scale_to_quaternion(kron_sparse(gaussian_toeplitz(n, sigma, r), uniform_toeplitz(n, s)), f1, f2, f3);
}

// Horizontal motion blur of length len on a height x width image with zero
// boundary: pixel (i, j) averages columns j - h .. j - h + len - 1 with weight
// 1/len each, h = (len - 1) / 2; taps outside the image are dropped.
inline RealSparse motion_blur_matrix(std::size_t height, std::size_t width, std::size_t len) {
    if (len < 1) throw std::invalid_argument("motion_blur_matrix: len must be at least 1");
    const long h = long(len - 1) / 2;
    const double v = 1.0 / double(len);
    std::vector<Triplet> t;
    for (std::size_t j = 0; j < width; ++j)
        for (std::size_t i = 0; i < height; ++i)
            for (long d = -h; d < long(len) - h; ++d) {
                const long jj = long(j) + d;
                if (jj < 0 || jj >= long(width)) continue;
                t.push_back({j * height + i, std::size_t(jj) * height + i, v});
            }
    return RealSparse::from_triplets(height * width, height * width, std::move(t));
}

inline RealSparse motion_blur_matrix(std::size_t n, std::size_t len) { return motion_blur_matrix(n, n, len); }

} // namespace qssy
