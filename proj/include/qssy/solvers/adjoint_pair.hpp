#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "qssy/solvers/common.hpp"
#include "qssy/solvers/qnherlq.hpp"
#include "qssy/solvers/qnherqr.hpp"
#include "qssy/solvers/recurrences.hpp"
#include "qssy/ssy.hpp"

namespace qssy {

enum class PairMethod { galerkin, minimum_residual };

struct AdjointPairReport {
    SolveReport primal;  // A x = b
    SolveReport adjoint; // A* z = c
};

namespace detail {

// One side of the pair: either engine, its own residual bookkeeping and status.
class PairSide {
public:
    PairSide(PairMethod method, const QuatVector& x0, double beta, const QuatVector& first_dir) {
        if (method == PairMethod::galerkin)
            lq_.emplace(x0, beta, first_dir);
        else
            qr_.emplace(x0, beta);
        x_ = x0;
    }

    // alpha, sub, super describe column m+1 of this side's tridiagonal matrix.
    void update(const Quaternion& alpha, double sub, double super, const QuatVector& dir_now,
                const QuatVector* dir_next) {
        if (lq_) {
            lq_->update(alpha, sub, super, dir_next);
            if (lq_->state().galerkin_defined) {
                x_ = lq_->x();
                estimate_ = lq_->state().residual;
                defined_ = true;
            } else {
                defined_ = false;
            }
        } else {
            qr_->update(super_prev_, alpha, sub, dir_now);
            super_prev_ = super;
            x_ = qr_->x();
            estimate_ = qr_->residual();
            defined_ = true;
        }
    }

    const QuatVector& x() const { return x_; }
    double estimate() const { return estimate_; }
    bool defined() const { return defined_; }

    bool done = false;
    SolveReport report;

private:
    std::optional<GalerkinEngine> lq_;
    std::optional<MinResEngine> qr_;
    QuatVector x_;
    double estimate_ = 0.0;
    double super_prev_ = 0.0;
    bool defined_ = false;
};

} // namespace detail

// Solves A x = b and A* z = c from one tridiagonalization pass started with
// p_1 = (b - A x0)/beta and q_1 = (c - A* z0)/gamma. The primal iterate lives in
// x0 + span(q_1..q_m); the adjoint one in z0 + span(p_1..p_m), driven by T_m*.
// opts.x0 seeds x; z0 seeds z. Residuals follow the recurrences unless
// opts.residual_mode asks for recomputation.
inline AdjointPairReport solve_adjoint_pair(const QuatMatrix& a, const QuatVector& b, const QuatVector& c,
                                            const SolveOptions& opts = {},
                                            PairMethod method = PairMethod::minimum_residual,
                                            const std::optional<QuatVector>& z0 = std::nullopt) {
    detail::validate(opts, a, b);
    if (c.size() != a.rows()) throw dimension_error("solve_adjoint_pair: c length mismatch");
    if (z0 && z0->size() != c.size()) throw dimension_error("solve_adjoint_pair: z0 length mismatch");
    const bool recompute = opts.residual_mode.value_or(ResidualMode::recurrence) == ResidualMode::recomputed;
    const double bnorm = norm2(b), cnorm = norm2(c);
    if (bnorm == 0.0 || cnorm == 0.0) throw std::domain_error("solve_adjoint_pair: b and c must be nonzero");

    const QuatVector x0 = opts.x0 ? *opts.x0 : QuatVector(b.size());
    const QuatVector zz0 = z0 ? *z0 : QuatVector(c.size());
    const QuatVector r0 = b - matvec(a, x0);
    const QuatVector s0 = c - matvec_adj(a, zz0);
    const double beta = norm2(r0), gamma = norm2(s0);

    SolveOptions silent = opts;
    silent.on_iteration = nullptr;
    detail::Monitor pmon(silent, bnorm), amon(silent, cnorm);

    AdjointPairReport out;
    auto finish_trivial = [&](SolveReport& rep, const QuatVector& start, double rr, const detail::Monitor& mon) {
        rep.x = start;
        rep.rr_history = {rr};
        rep.status = SolveStatus::converged;
        rep.final_true_rr = rr;
        mon.finish(rep);
    };
    const double prr0 = pmon.relative(beta), arr0 = amon.relative(gamma);
    const bool p_trivial = prr0 <= opts.tol, a_trivial = arr0 <= opts.tol;
    if (p_trivial || a_trivial) {
        // A vanishing starting residual cannot seed the shared recurrence; the
        // other system is then solved on its own.
        auto single = [&](const QuatMatrix& op, const QuatVector& rhs, const QuatVector& start) {
            SolveOptions o = opts;
            o.x0 = start;
            return method == PairMethod::galerkin ? qnherlq_solve(op, rhs, o) : qnherqr_solve(op, rhs, o);
        };
        if (p_trivial) finish_trivial(out.primal, x0, prr0, pmon);
        else out.primal = single(a, b, x0);
        if (a_trivial) finish_trivial(out.adjoint, zz0, arr0, amon);
        else out.adjoint = single(a.adjoint(), c, zz0);
        return out;
    }

    SSYState st(a, r0, s0, opts.breakdown_rel_tol, false);
    detail::PairSide prim(method, x0, beta, st.q());
    detail::PairSide adj(method, zz0, gamma, st.p());
    pmon.record(prim.report, 0, prr0, prr0);
    amon.record(adj.report, 0, arr0, arr0);

    auto check_side = [&](detail::PairSide& side, const detail::Monitor& mon, std::size_t m, bool is_primal,
                          bool recurrence_ended) {
        if (side.done) return;
        auto truth = [&] {
            return mon.relative(is_primal ? detail::true_residual(a, b, side.x())
                                          : detail::true_residual_adj(a, c, side.x()));
        };
        const double est = mon.relative(side.estimate());
        double true_rr = recompute ? truth() : -1.0;
        const double rr = recompute ? true_rr : est;
        mon.record(side.report, m, rr, est);
        if (recurrence_ended) {
            if (true_rr < 0.0) true_rr = truth();
            side.report.status = true_rr <= opts.tol ? SolveStatus::breakdown_exact : SolveStatus::breakdown_inexact;
            side.report.final_true_rr = true_rr;
            side.done = true;
            return;
        }
        if (side.defined() && rr <= opts.tol) {
            if (true_rr < 0.0) true_rr = truth();
            if (true_rr <= opts.tol) {
                side.report.status = SolveStatus::converged;
                side.report.final_true_rr = true_rr;
                side.done = true;
            }
        }
    };

    bool singular = false;
    for (std::size_t m = 1; m <= opts.maxit && !(prim.done && adj.done); ++m) {
        const StepResult sr = st.step();
        const bool ended = sr.kind != StepKind::advanced;
        try {
            if (!prim.done)
                prim.update(sr.alpha, sr.beta, sr.gamma_vanished ? 0.0 : sr.gamma, st.q_prev(),
                            sr.gamma_vanished ? nullptr : &st.q());
            if (!adj.done)
                adj.update(qconj(sr.alpha), sr.gamma, sr.beta_vanished ? 0.0 : sr.beta, st.p_prev(),
                           sr.beta_vanished ? nullptr : &st.p());
        } catch (const std::domain_error&) {
            singular = true;
            break;
        }
        check_side(prim, pmon, m, true, ended);
        check_side(adj, amon, m, false, ended);
        if (ended) break;
    }

    for (auto* side : {&prim, &adj}) {
        if (!side->done) {
            const bool is_primal = side == &prim;
            const detail::Monitor& mon = is_primal ? pmon : amon;
            side->report.final_true_rr = mon.relative(is_primal ? detail::true_residual(a, b, side->x())
                                                                : detail::true_residual_adj(a, c, side->x()));
            side->report.status =
                singular || st.terminated() ? SolveStatus::breakdown_inexact : SolveStatus::maxit;
        }
        side->report.x = side->x();
    }
    pmon.finish(prim.report);
    amon.finish(adj.report);
    out.primal = std::move(prim.report);
    out.adjoint = std::move(adj.report);
    return out;
}

} // namespace qssy
