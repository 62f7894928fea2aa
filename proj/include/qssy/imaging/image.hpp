#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qssy/errors.hpp"
#include "qssy/vector.hpp"

namespace qssy {

// Colour image as four real planes with values in [0, 1]. Plane 0 carries the
// alpha channel for RGBA images and is identically zero otherwise; planes 1-3
// are red, green and blue.
struct QuatImage {
    std::size_t height = 0, width = 0;
    bool has_alpha = false;
    std::array<Eigen::MatrixXd, 4> planes;

    QuatImage() = default;
    QuatImage(std::size_t h, std::size_t w, bool alpha = false) : height(h), width(w), has_alpha(alpha) {
        for (auto& p : planes) p = Eigen::MatrixXd::Zero(Eigen::Index(h), Eigen::Index(w));
    }

    Eigen::MatrixXd& real() { return planes[0]; }
    Eigen::MatrixXd& red() { return planes[1]; }
    Eigen::MatrixXd& green() { return planes[2]; }
    Eigen::MatrixXd& blue() { return planes[3]; }
    const Eigen::MatrixXd& real() const { return planes[0]; }
    const Eigen::MatrixXd& red() const { return planes[1]; }
    const Eigen::MatrixXd& green() const { return planes[2]; }
    const Eigen::MatrixXd& blue() const { return planes[3]; }

    // Planes that carry image samples: 1-3, plus 0 when alpha is present.
    int first_plane() const { return has_alpha ? 0 : 1; }
    std::size_t samples_per_pixel() const { return has_alpha ? 4 : 3; }
};

// Column-major stacking: pixel (i, j) goes to entry j * height + i as
// alpha + red i + green j + blue k.
inline QuatVector vec(const QuatImage& img) {
    QuatVector v(img.height * img.width);
    for (int c = 0; c < 4; ++c) {
        auto& out = v.plane(c);
        for (std::size_t j = 0; j < img.width; ++j)
            for (std::size_t i = 0; i < img.height; ++i) out[j * img.height + i] = img.planes[c](Eigen::Index(i), Eigen::Index(j));
    }
    return v;
}

// Inverse of vec. Values are clamped to [0, 1]; without alpha the real part is dropped.
inline QuatImage unvec(const QuatVector& x, std::size_t height, std::size_t width, bool has_alpha = false) {
    if (x.size() != height * width)
        throw dimension_error("unvec: vector of length " + std::to_string(x.size()) + " does not fit " +
                              std::to_string(height) + "x" + std::to_string(width));
    QuatImage img(height, width, has_alpha);
    for (int c = has_alpha ? 0 : 1; c < 4; ++c) {
        const auto& in = x.plane(c);
        for (std::size_t j = 0; j < width; ++j)
            for (std::size_t i = 0; i < height; ++i)
                img.planes[c](Eigen::Index(i), Eigen::Index(j)) = std::clamp(in[j * height + i], 0.0, 1.0);
    }
    return img;
}

namespace detail {

inline void require_same_shape(const QuatImage& a, const QuatImage& b, const char* what) {
    if (a.height != b.height || a.width != b.width || a.has_alpha != b.has_alpha)
        throw dimension_error(std::string(what) + ": images differ in shape or channel count");
}

inline double diff_sq(const QuatImage& a, const QuatImage& b) {
    double s = 0.0;
    for (int c = a.first_plane(); c < 4; ++c) s += (a.planes[c] - b.planes[c]).squaredNorm();
    return s;
}

} // namespace detail

inline double image_norm(const QuatImage& a) {
    double s = 0.0;
    for (int c = a.first_plane(); c < 4; ++c) s += a.planes[c].squaredNorm();
    return std::sqrt(s);
}

// Peak signal-to-noise ratio with peak value 1, counting 3 samples per pixel
// for RGB and 4 for RGBA. Identical images give +infinity.
inline double psnr(const QuatImage& truth, const QuatImage& restored) {
    detail::require_same_shape(truth, restored, "psnr");
    const double err = detail::diff_sq(truth, restored);
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    const double samples = double(truth.samples_per_pixel() * truth.height * truth.width);
    return 10.0 * std::log10(samples / err);
}

// Global SSIM: means, variances and covariance over all colour samples,
// c1 = 0.01^2, c2 = 0.03^2.
inline double ssim(const QuatImage& x, const QuatImage& y) {
    detail::require_same_shape(x, y, "ssim");
    constexpr double c1 = 1e-4, c2 = 9e-4;
    const double n = double(x.samples_per_pixel() * x.height * x.width);
    if (n == 0.0) throw dimension_error("ssim: empty image");
    double mx = 0.0, my = 0.0;
    for (int c = x.first_plane(); c < 4; ++c) {
        mx += x.planes[c].sum();
        my += y.planes[c].sum();
    }
    mx /= n;
    my /= n;
    double vx = 0.0, vy = 0.0, cxy = 0.0;
    for (int c = x.first_plane(); c < 4; ++c) {
        const Eigen::ArrayXXd dx = x.planes[c].array() - mx;
        const Eigen::ArrayXXd dy = y.planes[c].array() - my;
        vx += dx.square().sum();
        vy += dy.square().sum();
        cxy += (dx * dy).sum();
    }
    vx /= n;
    vy /= n;
    cxy /= n;
    return (2.0 * mx * my + c1) * (2.0 * cxy + c2) / ((mx * mx + my * my + c1) * (vx + vy + c2));
}

inline double rel_error(const QuatImage& truth, const QuatImage& restored) {
    detail::require_same_shape(truth, restored, "rel_error");
    const double nt = image_norm(truth);
    if (nt == 0.0) throw std::invalid_argument("rel_error: reference image is zero");
    return std::sqrt(detail::diff_sq(truth, restored)) / nt;
}

} // namespace qssy
