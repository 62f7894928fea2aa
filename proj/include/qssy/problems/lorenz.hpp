#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "qssy/matrix.hpp"
#include "qssy/vector.hpp"

namespace qssy {

struct LorenzParams {
    double sigma = 10.0;
    double beta = 8.0 / 3.0;
    double rho = 28.0;
};

// Uniformly sampled trajectory; xr, xg, xb are the x, y, z coordinates.
struct LorenzSeries {
    std::vector<double> t, xr, xg, xb;

    std::size_t size() const { return t.size(); }
};

using Vec3 = std::array<double, 3>;

inline Vec3 lorenz_rhs(const Vec3& s, const LorenzParams& p = {}) {
    return {p.sigma * (s[1] - s[0]), s[0] * (p.rho - s[2]) - s[1], s[0] * s[1] - p.beta * s[2]};
}

// Classical fourth-order Runge-Kutta with a fixed step.
inline LorenzSeries lorenz_trajectory(double t_end, double dt, const Vec3& init, const LorenzParams& p = {}) {
    if (!(dt > 0.0) || !(t_end > 0.0)) throw std::invalid_argument("lorenz_trajectory: dt and t_end must be positive");
    const std::size_t steps = static_cast<std::size_t>(std::llround(t_end / dt));
    LorenzSeries out;
    out.t.reserve(steps + 1);
    Vec3 s = init;
    auto push = [&](std::size_t k) {
        out.t.push_back(double(k) * dt);
        out.xr.push_back(s[0]);
        out.xg.push_back(s[1]);
        out.xb.push_back(s[2]);
    };
    auto axpy = [](const Vec3& a, const Vec3& b, double h) { return Vec3{a[0] + h * b[0], a[1] + h * b[1], a[2] + h * b[2]}; };
    push(0);
    for (std::size_t k = 1; k <= steps; ++k) {
        const Vec3 k1 = lorenz_rhs(s, p);
        const Vec3 k2 = lorenz_rhs(axpy(s, k1, dt / 2), p);
        const Vec3 k3 = lorenz_rhs(axpy(s, k2, dt / 2), p);
        const Vec3 k4 = lorenz_rhs(axpy(s, k3, dt), p);
        for (int c = 0; c < 3; ++c) s[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        push(k);
    }
    return out;
}

// Root mean square over all three coordinates of all samples.
inline double series_rms(const LorenzSeries& s) {
    double acc = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) acc += s.xr[k] * s.xr[k] + s.xg[k] * s.xg[k] + s.xb[k] * s.xb[k];
    return s.size() ? std::sqrt(acc / (3.0 * double(s.size()))) : 0.0;
}

// Filter design system X w = y. The target y(t) = xr i + xg j + xb k is a pure
// quaternion signal, the input is x(t) = y(t - 1) + n(t) with Gaussian noise of
// standard deviation noise_sigma on each imaginary plane, and
// X[r][s] = x(t0 + r - s) for r = 0..q, s = 0..p, y = (y(t0), ..., y(t0 + q)).
// t0 = p + 1 is the first sample with a complete history.
struct FilterSystem {
    QuatMatrix X;
    QuatVector y;
    std::optional<QuatVector> w_true;
    std::size_t t0 = 0;
};

inline FilterSystem build_filter_system(const LorenzSeries& series, double noise_sigma, std::size_t p, std::size_t q,
                                        std::uint64_t seed) {
    const std::size_t t0 = p + 1;
    if (t0 + q >= series.size())
        throw std::invalid_argument("build_filter_system: series has " + std::to_string(series.size()) +
                                    " samples, needs " + std::to_string(t0 + q + 1));
    if (noise_sigma < 0.0) throw std::invalid_argument("build_filter_system: noise_sigma must be nonnegative");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    // Input samples x(t) for t = t0 - p .. t0 + q.
    const std::size_t lo = t0 - p, count = p + q + 1;
    std::vector<Quaternion> x(count);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t t = lo + k;
        const double ni = noise_sigma * nd(rng);
        const double nj = noise_sigma * nd(rng);
        const double nk = noise_sigma * nd(rng);
        x[k] = {0.0, series.xr[t - 1] + ni, series.xg[t - 1] + nj, series.xb[t - 1] + nk};
    }

    FilterSystem fs;
    fs.t0 = t0;
    fs.X = QuatMatrix::zeros(q + 1, p + 1);
    for (std::size_t r = 0; r <= q; ++r)
        for (std::size_t s = 0; s <= p; ++s) fs.X.set(r, s, x[t0 + r - s - lo]);
    fs.y = QuatVector(q + 1);
    for (std::size_t r = 0; r <= q; ++r)
        fs.y.set(r, {0.0, series.xr[t0 + r], series.xg[t0 + r], series.xb[t0 + r]});
    return fs;
}

} // namespace qssy
