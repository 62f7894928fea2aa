#pragma once

#include <optional>

#include "qssy/givens.hpp"
#include "qssy/quaternion.hpp"
#include "qssy/vector.hpp"

// Scalar and vector recurrences that turn the tridiagonal coefficients into
// iterates. Both engines are fed (diagonal, sub-diagonal, super-diagonal) of the
// growing tridiagonal matrix, so the adjoint system runs through them by passing
// (conj(alpha), gamma, beta) and the p vectors instead of the q vectors.

namespace qssy {

// Row rotation annihilating the super-diagonal entry gamma next to nu'.
inline RowRotation lq_rotation(const Quaternion& nu_prime, double gamma) {
    return quat_givens_row(nu_prime, Quaternion{gamma});
}

// LQ factorization T_m G_12 ... G_{m-1,m} = L~_m kept as a band, plus the forward
// substitution for L_m z = beta e_1.
struct LQState {
    std::size_t m = 0;
    // Rotation (c_m, s_m). The start values (-1, 0) with delta~_1 = 0 make the
    // first update produce nu'_1 = alpha_1 and delta~_2 = beta_1.
    double c = -1.0;
    Quaternion s;
    double delta_tilde = 0.0; // delta~_{m+1}
    Quaternion eta;           // eta_{m+1}
    Quaternion zeta;          // zeta_m
    Quaternion zeta_prev;     // zeta_{m-1}
    Quaternion zeta_tilde;    // zeta~_m, valid when c_m > 0
    Quaternion last_y;        // e_m^T y_m
    Quaternion nu_prime, nu, delta;
    double rhs = 0.0;         // beta, consumed by the first update
    bool galerkin_defined = false;
    double residual = 0.0;    // beta_m |e_m^T y_m|
};

inline LQState lq_start(double beta) {
    LQState s;
    s.rhs = beta;
    return s;
}

// Folds in column m+1: diagonal alpha_{m+1}, sub-diagonal beta_{m+1} and
// super-diagonal gamma_{m+1}.
inline LQState lq_update(const LQState& prev, const Quaternion& alpha, double beta, double gamma) {
    LQState st = prev;
    st.m = prev.m + 1;
    const Quaternion sbar = qconj(prev.s);
    st.delta = prev.delta_tilde * prev.c + alpha * sbar;
    st.nu_prime = prev.delta_tilde * prev.s - alpha * prev.c;
    st.delta_tilde = -beta * prev.c;
    st.eta = beta * sbar;

    const RowRotation rot = lq_rotation(st.nu_prime, gamma);
    st.c = rot.c;
    st.s = rot.s;
    st.nu = rot.xi;

    const Quaternion rhs{prev.m == 0 ? prev.rhs : 0.0};
    st.zeta = qinv(st.nu) * (rhs - prev.eta * prev.zeta_prev - st.delta * prev.zeta);
    st.zeta_prev = prev.zeta;
    st.galerkin_defined = st.c > 0.0;
    if (st.galerkin_defined) {
        st.zeta_tilde = st.zeta / st.c;
        // y_m = G_12 ... G_{m-1,m} z~_m, so only the last rotation reaches e_m.
        st.last_y = sbar * prev.zeta - prev.c * st.zeta_tilde;
        st.residual = beta * qmod(st.last_y);
    }
    return st;
}

// Pipelined Galerkin iterate: x_m = x~_{m-1} + w~_m zeta~_m alongside
// x~_m = x~_{m-1} + w_m zeta_m.
class GalerkinEngine {
public:
    GalerkinEngine(const QuatVector& x0, double beta, const QuatVector& first_dir)
        : state_(lq_start(beta)), w_tilde_(first_dir), x_tilde_(x0), x_(x0) {}

    // next_dir is q_{m+2} (or p_{m+2} for the adjoint); nullptr means zero.
    void update(const Quaternion& alpha, double sub, double super, const QuatVector* next_dir) {
        state_ = lq_update(state_, alpha, sub, super);
        if (state_.galerkin_defined) {
            x_ = x_tilde_;
            add_right(x_, w_tilde_, state_.zeta_tilde);
        }
        QuatVector w = w_tilde_;
        scale(w, state_.c);
        scale_right(w_tilde_, state_.s);
        if (next_dir) {
            add_right(w, *next_dir, qconj(state_.s));
            add_scaled(w_tilde_, *next_dir, -state_.c);
        }
        add_right(x_tilde_, w, state_.zeta);
    }

    const LQState& state() const { return state_; }
    const QuatVector& x() const { return x_; }
    const QuatVector& x_tilde() const { return x_tilde_; }

private:
    LQState state_;
    QuatVector w_tilde_;
    QuatVector x_tilde_;
    QuatVector x_;
};

// QR factorization of the augmented tridiagonal matrix kept as a band
// (sigma, delta, epsilon) with right-hand side recurrences tau, rho.
struct QRState {
    std::size_t m = 0;
    double c_prev = 1.0; // c_{m-1}
    Quaternion s_prev;   // s_{m-1}
    double c = 1.0;      // c_m
    Quaternion s;        // s_m
    Quaternion sigma, delta, epsilon;
    Quaternion tau;
    Quaternion rho;
};

inline QRState qr_start(double beta) {
    QRState s;
    s.rho = Quaternion{beta};
    return s;
}

// Adds column m+1: gamma_m above the diagonal, alpha_{m+1} on it and beta_{m+1} below.
inline QRState qr_update(const QRState& prev, double gamma_m, const Quaternion& alpha, double beta) {
    QRState st;
    st.m = prev.m + 1;
    st.epsilon = prev.s_prev * gamma_m;
    const double gamma_hat = prev.c_prev * gamma_m;
    st.delta = prev.c * gamma_hat + prev.s * alpha;
    const Quaternion alpha_tilde = -(qconj(prev.s) * gamma_hat) + prev.c * alpha;

    const ColumnRotation rot = quat_givens(alpha_tilde, Quaternion{beta});
    st.c_prev = prev.c;
    st.s_prev = prev.s;
    st.c = rot.g.c;
    st.s = rot.g.s;
    st.sigma = rot.xi;
    st.tau = st.c * prev.rho;
    st.rho = -(qconj(st.s) * prev.rho);
    return st;
}

// Minimum-residual iterate through N_m = Q_m R_m^{-1}:
// n_{m+1} = [q_{m+1} - n_{m-1} eps_{m-1} - n_m delta_m] sigma_{m+1}^{-1}.
class MinResEngine {
public:
    MinResEngine(const QuatVector& x0, double beta)
        : state_(qr_start(beta)), n_prev_(x0.size()), n_cur_(x0.size()), x_(x0) {}

    // dir is q_{m+1} (or p_{m+1} for the adjoint).
    void update(double super_prev, const Quaternion& alpha, double sub, const QuatVector& dir) {
        state_ = qr_update(state_, super_prev, alpha, sub);
        QuatVector n = dir;
        add_right(n, n_prev_, -state_.epsilon);
        add_right(n, n_cur_, -state_.delta);
        scale_right(n, qinv(state_.sigma));
        add_right(x_, n, state_.tau);
        n_prev_ = std::move(n_cur_);
        n_cur_ = std::move(n);
    }

    const QRState& state() const { return state_; }
    const QuatVector& x() const { return x_; }
    double residual() const { return qmod(state_.rho); }

private:
    QRState state_;
    QuatVector n_prev_;
    QuatVector n_cur_;
    QuatVector x_;
};

} // namespace qssy
