#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "qssy/counters.hpp"
#include "qssy/errors.hpp"
#include "qssy/quaternion.hpp"

namespace qssy {

// Quaternion vector stored as four real planes v0 + v1 i + v2 j + v3 k.
class QuatVector {
public:
    QuatVector() { detail::vector_born(); }
    explicit QuatVector(std::size_t n) : planes_{std::vector<double>(n), std::vector<double>(n),
                                                 std::vector<double>(n), std::vector<double>(n)} {
        detail::vector_born();
    }
    QuatVector(std::initializer_list<Quaternion> values) : QuatVector(values.size()) {
        std::size_t i = 0;
        for (const Quaternion& q : values) set(i++, q);
    }
    QuatVector(const QuatVector& other) : planes_(other.planes_) { detail::vector_born(); }
    QuatVector(QuatVector&& other) noexcept : planes_(std::move(other.planes_)) { detail::vector_born(); }
    QuatVector& operator=(const QuatVector&) = default;
    QuatVector& operator=(QuatVector&&) noexcept = default;
    ~QuatVector() { detail::vector_died(); }

    static QuatVector zeros(std::size_t n) { return QuatVector(n); }

    static QuatVector from_planes(std::vector<double> v0, std::vector<double> v1, std::vector<double> v2,
                                  std::vector<double> v3) {
        const std::size_t n = v0.size();
        if (v1.size() != n || v2.size() != n || v3.size() != n)
            throw dimension_error("QuatVector planes must share one length");
        QuatVector out;
        out.planes_ = {std::move(v0), std::move(v1), std::move(v2), std::move(v3)};
        return out;
    }

    std::size_t size() const { return planes_[0].size(); }

    Quaternion operator[](std::size_t i) const {
        return {planes_[0][i], planes_[1][i], planes_[2][i], planes_[3][i]};
    }
    Quaternion at(std::size_t i) const {
        if (i >= size()) throw dimension_error("QuatVector index out of range");
        return (*this)[i];
    }
    void set(std::size_t i, const Quaternion& q) {
        planes_[0][i] = q.w;
        planes_[1][i] = q.x;
        planes_[2][i] = q.y;
        planes_[3][i] = q.z;
    }

    std::vector<double>& plane(int c) { return planes_[c]; }
    const std::vector<double>& plane(int c) const { return planes_[c]; }

    void fill_zero() {
        for (auto& p : planes_) std::fill(p.begin(), p.end(), 0.0);
    }

private:
    std::array<std::vector<double>, 4> planes_;
};

inline void require_same_size(const QuatVector& a, const QuatVector& b, const char* what) {
    if (a.size() != b.size())
        throw dimension_error(std::string(what) + ": length mismatch " + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()));
}

// <x, y> = sum_i conj(y_i) x_i; right-linear in x.
inline Quaternion inner(const QuatVector& x, const QuatVector& y) {
    require_same_size(x, y, "inner");
    const double *x0 = x.plane(0).data(), *x1 = x.plane(1).data(), *x2 = x.plane(2).data(),
                 *x3 = x.plane(3).data();
    const double *y0 = y.plane(0).data(), *y1 = y.plane(1).data(), *y2 = y.plane(2).data(),
                 *y3 = y.plane(3).data();
    double w = 0, a = 0, b = 0, c = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        w += y0[i] * x0[i] + y1[i] * x1[i] + y2[i] * x2[i] + y3[i] * x3[i];
        a += y0[i] * x1[i] - y1[i] * x0[i] - y2[i] * x3[i] + y3[i] * x2[i];
        b += y0[i] * x2[i] + y1[i] * x3[i] - y2[i] * x0[i] - y3[i] * x1[i];
        c += y0[i] * x3[i] - y1[i] * x2[i] + y2[i] * x1[i] - y3[i] * x0[i];
    }
    return {w, a, b, c};
}

inline double norm2(const QuatVector& x) {
    double s = 0.0;
    for (int c = 0; c < 4; ++c)
        for (double v : x.plane(c)) s += v * v;
    return std::sqrt(s);
}

// y += x * alpha (right multiplication by a quaternion scalar).
inline void add_right(QuatVector& y, const QuatVector& x, const Quaternion& alpha) {
    require_same_size(x, y, "add_right");
    const double *x0 = x.plane(0).data(), *x1 = x.plane(1).data(), *x2 = x.plane(2).data(),
                 *x3 = x.plane(3).data();
    double *y0 = y.plane(0).data(), *y1 = y.plane(1).data(), *y2 = y.plane(2).data(), *y3 = y.plane(3).data();
    const double aw = alpha.w, ax = alpha.x, ay = alpha.y, az = alpha.z;
    for (std::size_t i = 0; i < x.size(); ++i) {
        y0[i] += x0[i] * aw - x1[i] * ax - x2[i] * ay - x3[i] * az;
        y1[i] += x0[i] * ax + x1[i] * aw + x2[i] * az - x3[i] * ay;
        y2[i] += x0[i] * ay - x1[i] * az + x2[i] * aw + x3[i] * ax;
        y3[i] += x0[i] * az + x1[i] * ay - x2[i] * ax + x3[i] * aw;
    }
}

// y += x * s for real s.
inline void add_scaled(QuatVector& y, const QuatVector& x, double s) {
    require_same_size(x, y, "add_scaled");
    for (int c = 0; c < 4; ++c) {
        const double* xs = x.plane(c).data();
        double* ys = y.plane(c).data();
        for (std::size_t i = 0; i < x.size(); ++i) ys[i] += xs[i] * s;
    }
}

// x <- x * alpha.
inline void scale_right(QuatVector& x, const Quaternion& alpha) {
    double *x0 = x.plane(0).data(), *x1 = x.plane(1).data(), *x2 = x.plane(2).data(), *x3 = x.plane(3).data();
    const double aw = alpha.w, ax = alpha.x, ay = alpha.y, az = alpha.z;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double a = x0[i], b = x1[i], c = x2[i], d = x3[i];
        x0[i] = a * aw - b * ax - c * ay - d * az;
        x1[i] = a * ax + b * aw + c * az - d * ay;
        x2[i] = a * ay - b * az + c * aw + d * ax;
        x3[i] = a * az + b * ay - c * ax + d * aw;
    }
}

inline void scale(QuatVector& x, double s) {
    for (int c = 0; c < 4; ++c)
        for (double& v : x.plane(c)) v *= s;
}

inline QuatVector operator+(QuatVector a, const QuatVector& b) {
    add_scaled(a, b, 1.0);
    return a;
}

inline QuatVector operator-(QuatVector a, const QuatVector& b) {
    add_scaled(a, b, -1.0);
    return a;
}

inline QuatVector operator*(QuatVector x, const Quaternion& alpha) {
    scale_right(x, alpha);
    return x;
}

inline QuatVector operator*(const Quaternion& alpha, const QuatVector& x) {
    QuatVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out.set(i, alpha * x[i]);
    return out;
}

inline double max_abs_diff(const QuatVector& a, const QuatVector& b) {
    require_same_size(a, b, "max_abs_diff");
    double m = 0.0;
    for (int c = 0; c < 4; ++c)
        for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.plane(c)[i] - b.plane(c)[i]));
    return m;
}

inline QuatVector unit_vector(std::size_t n, std::size_t k) {
    QuatVector e(n);
    e.set(k, Quaternion{1.0});
    return e;
}

inline QuatVector ones(std::size_t n) {
    QuatVector e(n);
    std::fill(e.plane(0).begin(), e.plane(0).end(), 1.0);
    return e;
}

} // namespace qssy
