#pragma once

#include <cmath>
#include <stdexcept>

#include "qssy/quaternion.hpp"

namespace qssy {

// 2x2 unitary [c, s; -conj(s), c], c real in [0, 1].
struct GivensQ {
    double c = 1.0;
    Quaternion s;
};

struct ColumnRotation {
    GivensQ g;
    Quaternion xi;
};

// Row rotation [c, s; conj(s), -c] acting from the right on [y1, y2].
struct RowRotation {
    double c = 1.0;
    Quaternion s;
    Quaternion xi;
};

// G (x1, x2)^T = (xi, 0)^T with |xi| = ||(x1, x2)||. x1 = 0 gives c = 0, s = 1, xi = x2.
inline ColumnRotation quat_givens(const Quaternion& x1, const Quaternion& x2) {
    const double m1 = qmod(x1);
    const double nrm = std::hypot(m1, qmod(x2));
    if (nrm == 0.0) throw std::domain_error("quat_givens: both entries are zero");
    if (m1 == 0.0) return {{0.0, Quaternion{1.0}}, x2};
    const Quaternion phase = x1 / m1;
    return {{m1 / nrm, phase * qconj(x2) / nrm}, phase * nrm};
}

// [y1, y2] [c, s; conj(s), -c] = [xi, 0]. y1 = 0 gives c = 0, s = 1, xi = y2.
inline RowRotation quat_givens_row(const Quaternion& y1, const Quaternion& y2) {
    const double m1 = qmod(y1);
    const double nrm = std::hypot(m1, qmod(y2));
    if (nrm == 0.0) throw std::domain_error("quat_givens_row: both entries are zero");
    if (m1 == 0.0) return {0.0, Quaternion{1.0}, y2};
    const Quaternion phase = y1 / m1;
    return {m1 / nrm, qconj(phase) * y2 / nrm, phase * nrm};
}

} // namespace qssy
