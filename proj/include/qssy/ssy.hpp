#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qssy/errors.hpp"
#include "qssy/matrix.hpp"
#include "qssy/quaternion.hpp"
#include "qssy/vector.hpp"

namespace qssy {

// Tridiagonal T with quaternion diagonal alpha, sub-diagonal beta and
// super-diagonal gamma (both real, nonnegative). When beta has as many entries
// as alpha the matrix is the augmented (m+1) x m form with trailing row beta_m e_m^T.
struct StrictTridiagonal {
    std::vector<Quaternion> alpha;
    std::vector<double> beta;
    std::vector<double> gamma;

    std::size_t size() const { return alpha.size(); }
    bool augmented() const { return !alpha.empty() && beta.size() == alpha.size(); }

    QuatMatrix to_dense() const {
        const std::size_t m = size();
        QuatMatrix t = QuatMatrix::zeros(augmented() ? m + 1 : m, m);
        for (std::size_t i = 0; i < m; ++i) t.set(i, i, alpha[i]);
        for (std::size_t i = 0; i < beta.size(); ++i) t.set(i + 1, i, Quaternion{beta[i]});
        for (std::size_t i = 0; i < gamma.size(); ++i) t.set(i, i + 1, Quaternion{gamma[i]});
        return t;
    }

    double max_imag_abs() const {
        double worst = 0.0;
        for (const Quaternion& a : alpha) worst = std::max({worst, std::abs(a.x), std::abs(a.y), std::abs(a.z)});
        return worst;
    }
};

enum class StepKind { advanced, breakdown_p, breakdown_q };

inline const char* to_string(StepKind k) {
    switch (k) {
    case StepKind::advanced: return "advanced";
    case StepKind::breakdown_p: return "breakdown_p";
    case StepKind::breakdown_q: return "breakdown_q";
    }
    return "?";
}

struct StepResult {
    StepKind kind = StepKind::advanced;
    Quaternion alpha;
    double beta = 0.0;
    double gamma = 0.0;
    bool beta_vanished = false;
    bool gamma_vanished = false;
};

// Coupled three-term recurrences producing unitary P, Q with P* A Q tridiagonal:
//   alpha_i = <A q_i, p_i>
//   p~ = A q_i  - p_i alpha_i       - p_{i-1} gamma_{i-1},  beta_i  = ||p~||
//   q~ = A* p_i - q_i conj(alpha_i) - q_{i-1} beta_{i-1},   gamma_i = ||q~||
// Coefficients multiply vectors from the right. Each step costs one matvec and
// one adjoint matvec. Only the last two p and q vectors are kept unless
// retain_bases is set.
class SSYState {
public:
    // The state keeps a pointer to the matrix, so temporaries are refused.
    SSYState(QuatMatrix&&, const QuatVector&, const QuatVector&, double = 1e-13, bool = false) = delete;
    SSYState(const QuatMatrix& a, const QuatVector& b, const QuatVector& c, double breakdown_rel_tol = 1e-13,
             bool retain_bases = false)
        : a_(&a), rel_tol_(breakdown_rel_tol), retain_(retain_bases) {
        if (a.rows() != a.cols()) throw dimension_error("SSYState: matrix must be square");
        if (b.size() != a.rows() || c.size() != a.rows()) throw dimension_error("SSYState: vector length mismatch");
        beta0_ = norm2(b);
        gamma0_ = norm2(c);
        if (beta0_ == 0.0 || gamma0_ == 0.0) throw std::domain_error("SSYState: starting vectors must be nonzero");
        p_ = b;
        scale(p_, 1.0 / beta0_);
        q_ = c;
        scale(q_, 1.0 / gamma0_);
        p_prev_ = QuatVector(a.rows());
        q_prev_ = QuatVector(a.rows());
        if (retain_) {
            P_.push_back(p_);
            Q_.push_back(q_);
        }
    }

    StepResult step() {
        if (terminated_) throw state_error("ssy_step called after breakdown");
        const QuatMatrix& a = *a_;

        QuatVector pt = matvec(a, q_);
        max_aq_ = std::max(max_aq_, norm2(pt));
        const Quaternion al = inner(pt, p_);
        add_right(pt, p_, -al);
        if (!gamma_.empty()) add_scaled(pt, p_prev_, -gamma_.back());

        QuatVector qt = matvec_adj(a, p_);
        add_right(qt, q_, -qconj(al));
        if (!beta_.empty()) add_scaled(qt, q_prev_, -beta_.back());

        StepResult r;
        r.alpha = al;
        r.beta = norm2(pt);
        r.gamma = norm2(qt);
        const double tau = breakdown_threshold();
        r.beta_vanished = r.beta <= tau;
        r.gamma_vanished = r.gamma <= tau;
        r.kind = r.beta_vanished ? StepKind::breakdown_p
                 : r.gamma_vanished ? StepKind::breakdown_q
                                    : StepKind::advanced;

        alpha_.push_back(al);
        beta_.push_back(r.beta);
        gamma_.push_back(r.gamma);

        // After a breakdown the successor keeps beta_i p_{i+1} = p~ so the
        // factorization identities stay checkable; a zero norm leaves it zero.
        if (r.beta > 0.0) scale(pt, 1.0 / r.beta);
        if (r.gamma > 0.0) scale(qt, 1.0 / r.gamma);
        p_prev_ = std::move(p_);
        q_prev_ = std::move(q_);
        p_ = std::move(pt);
        q_ = std::move(qt);
        if (retain_) {
            P_.push_back(p_);
            Q_.push_back(q_);
        }
        terminated_ = r.kind != StepKind::advanced;
        last_kind_ = r.kind;
        return r;
    }

    const QuatMatrix& matrix() const { return *a_; }
    std::size_t steps() const { return alpha_.size(); }
    bool terminated() const { return terminated_; }
    StepKind last_kind() const { return last_kind_; }

    // p_{i+1}, q_{i+1} after i steps; p_1, q_1 before the first step.
    const QuatVector& p() const { return p_; }
    const QuatVector& q() const { return q_; }
    const QuatVector& p_prev() const { return p_prev_; }
    const QuatVector& q_prev() const { return q_prev_; }

    double beta0() const { return beta0_; }
    double gamma0() const { return gamma0_; }
    const std::vector<Quaternion>& alpha() const { return alpha_; }
    const std::vector<double>& beta() const { return beta_; }
    const std::vector<double>& gamma() const { return gamma_; }

    double breakdown_threshold() const { return rel_tol_ * std::max(1.0, max_aq_); }

    bool retains_bases() const { return retain_; }
    const std::vector<QuatVector>& P() const { return P_; }
    const std::vector<QuatVector>& Q() const { return Q_; }

private:
    const QuatMatrix* a_;
    double rel_tol_;
    bool retain_;
    double beta0_ = 0.0;
    double gamma0_ = 0.0;
    double max_aq_ = 0.0;
    bool terminated_ = false;
    StepKind last_kind_ = StepKind::advanced;
    QuatVector p_, q_, p_prev_, q_prev_;
    std::vector<Quaternion> alpha_;
    std::vector<double> beta_, gamma_;
    std::vector<QuatVector> P_, Q_;
};

inline SSYState ssy_init(const QuatMatrix& a, const QuatVector& b, const QuatVector& c,
                         double breakdown_rel_tol = 1e-13, bool retain_bases = false) {
    return SSYState(a, b, c, breakdown_rel_tol, retain_bases);
}

SSYState ssy_init(QuatMatrix&&, const QuatVector&, const QuatVector&, double = 1e-13, bool = false) = delete;

inline StepResult ssy_step(SSYState& state) { return state.step(); }

// Leading m x m block T_m, or the (m+1) x m block with beta_m appended.
inline StrictTridiagonal assemble_T(const SSYState& s, std::size_t m, bool augmented = false) {
    if (m == 0 || m > s.steps())
        throw std::out_of_range("assemble_T: m = " + std::to_string(m) + " but " + std::to_string(s.steps()) +
                                " steps taken");
    StrictTridiagonal t;
    t.alpha.assign(s.alpha().begin(), s.alpha().begin() + m);
    t.beta.assign(s.beta().begin(), s.beta().begin() + (augmented ? m : m - 1));
    t.gamma.assign(s.gamma().begin(), s.gamma().begin() + (m - 1));
    return t;
}

struct FactorizationCheck {
    double res1 = 0.0;  // ||A Q_m - P_m T_m - beta_m p_{m+1} e_m^T||_F
    double res2 = 0.0;  // ||A* P_m - Q_m T_m^* - gamma_m q_{m+1} e_m^T||_F
    double orthP = 0.0; // max |(P_m^* P_m - I)_{jk}|
    double orthQ = 0.0;
};

inline FactorizationCheck check_factorization(const SSYState& s, std::size_t m) {
    if (!s.retains_bases()) throw state_error("check_factorization requires retained bases");
    if (m == 0 || m > s.steps()) throw std::out_of_range("check_factorization: m exceeds steps taken");
    const auto& P = s.P();
    const auto& Q = s.Q();
    const auto& al = s.alpha();
    const auto& be = s.beta();
    const auto& ga = s.gamma();
    FactorizationCheck out;
    double r1 = 0.0, r2 = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        QuatVector c1 = matvec(s.matrix(), Q[k]);
        add_right(c1, P[k], -al[k]);
        add_scaled(c1, P[k + 1], -be[k]);
        if (k > 0) add_scaled(c1, P[k - 1], -ga[k - 1]);
        r1 += std::pow(norm2(c1), 2);

        QuatVector c2 = matvec_adj(s.matrix(), P[k]);
        add_right(c2, Q[k], -qconj(al[k]));
        add_scaled(c2, Q[k + 1], -ga[k]);
        if (k > 0) add_scaled(c2, Q[k - 1], -be[k - 1]);
        r2 += std::pow(norm2(c2), 2);
    }
    out.res1 = std::sqrt(r1);
    out.res2 = std::sqrt(r2);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) {
            const Quaternion delta{j == k ? 1.0 : 0.0};
            out.orthP = std::max(out.orthP, qmod(inner(P[k], P[j]) - delta));
            out.orthQ = std::max(out.orthQ, qmod(inner(Q[k], Q[j]) - delta));
        }
    return out;
}

} // namespace qssy
