#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace qssy {

// q = w + x i + y j + z k, Hamilton convention (i^2 = j^2 = k^2 = ijk = -1).
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_) : w(w_) {}
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

    constexpr double operator[](int c) const { return c == 0 ? w : c == 1 ? x : c == 2 ? y : z; }

    constexpr bool is_zero() const { return w == 0.0 && x == 0.0 && y == 0.0 && z == 0.0; }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion qmul(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr Quaternion qconj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

constexpr double qnorm_sq(const Quaternion& q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }

inline double qmod(const Quaternion& q) { return std::sqrt(qnorm_sq(q)); }

inline Quaternion qinv(const Quaternion& q) {
    const double n2 = qnorm_sq(q);
    if (n2 == 0.0) throw std::domain_error("non-invertible quaternion");
    return {q.w / n2, -q.x / n2, -q.y / n2, -q.z / n2};
}

constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}
constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) { return qmul(a, b); }
constexpr Quaternion operator*(const Quaternion& a, double s) { return {a.w * s, a.x * s, a.y * s, a.z * s}; }
constexpr Quaternion operator*(double s, const Quaternion& a) { return a * s; }
constexpr Quaternion operator/(const Quaternion& a, double s) { return {a.w / s, a.x / s, a.y / s, a.z / s}; }
constexpr Quaternion& operator+=(Quaternion& a, const Quaternion& b) { return a = a + b; }
constexpr Quaternion& operator-=(Quaternion& a, const Quaternion& b) { return a = a - b; }

// q/|q|, or 1 for q = 0 so that phase factors are always unit.
inline Quaternion qphase(const Quaternion& q) {
    const double m = qmod(q);
    return m == 0.0 ? Quaternion{1.0} : q / m;
}

// "a+bi+cj+dk" with components in (w, x, y, z) order.
inline std::string to_string(const Quaternion& q) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi%+.17gj%+.17gk", q.w, q.x, q.y, q.z);
    return buf;
}

} // namespace qssy
