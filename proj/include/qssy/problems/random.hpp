#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "qssy/matrix.hpp"
#include "qssy/quaternion.hpp"
#include "qssy/vector.hpp"

namespace qssy {

using Rng = std::mt19937_64;

inline Quaternion random_quaternion(Rng& rng, double sd = 1.0) {
    std::normal_distribution<double> nd(0.0, sd);
    const double w = nd(rng), x = nd(rng), y = nd(rng), z = nd(rng);
    return {w, x, y, z};
}

inline QuatVector random_vector(std::size_t n, Rng& rng, double sd = 1.0) {
    QuatVector v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, random_quaternion(rng, sd));
    return v;
}

// Dense matrix with independent N(0, sd^2) components.
inline QuatMatrix random_matrix(std::size_t m, std::size_t n, Rng& rng, double sd = 1.0) {
    QuatMatrix a = QuatMatrix::zeros(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a.set(i, j, random_quaternion(rng, sd));
    return a;
}

// shift * I + G with G quaternion Gaussian of spectral norm about 2, so the
// singular values cluster in [shift - 2, shift + 2].
inline QuatMatrix random_well_conditioned(std::size_t n, Rng& rng, double shift = 3.0) {
    QuatMatrix a = random_matrix(n, n, rng, 1.0 / std::sqrt(4.0 * double(n)));
    for (std::size_t i = 0; i < n; ++i) a.set(i, i, a.at(i, i) + Quaternion{shift});
    return a;
}

// Hermitian (G + G*)/2 + shift * I.
inline QuatMatrix random_hermitian(std::size_t n, Rng& rng, double shift = 0.0) {
    QuatMatrix g = random_matrix(n, n, rng, 1.0 / std::sqrt(4.0 * double(n)));
    QuatMatrix h = QuatMatrix::zeros(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Quaternion v = (g.at(i, j) + qconj(g.at(j, i))) * 0.5;
            if (i == j) v = Quaternion{v.w + shift};
            h.set(i, j, v);
        }
    return h;
}

} // namespace qssy
