#pragma once

#include <stdexcept>

#include "qssy/solvers/common.hpp"
#include "qssy/ssy.hpp"

namespace qssy {

namespace detail {

// Shared driver for the single-system solvers. Engine-specific behaviour is
// supplied by `advance`, which consumes one tridiagonalization step and returns
// the current iterate plus the recurrence residual norm (or nothing when the
// iterate is undefined at this step).
struct StepOutcome {
    const QuatVector* x = nullptr;
    double residual_estimate = 0.0;
};

template <class Advance>
SolveReport run_ssy_solver(const QuatMatrix& a, const QuatVector& b, const SolveOptions& opts, ResidualMode mode,
                           Advance&& make_engine) {
    validate(opts, a, b);
    const double bnorm = norm2(b);
    Monitor mon(opts, bnorm);
    SolveReport rep;
    rep.x = opts.x0 ? *opts.x0 : QuatVector(b.size());
    QuatVector r0 = opts.x0 ? b - matvec(a, rep.x) : b;
    const double beta = norm2(r0);
    const double rr0 = mon.relative(beta);
    mon.record(rep, 0, rr0, rr0);
    if (bnorm == 0.0 || rr0 <= opts.tol) {
        rep.status = SolveStatus::converged;
        rep.final_true_rr = rr0;
        mon.finish(rep);
        return rep;
    }

    QuatVector q1 = opts.q1 ? *opts.q1 : r0;
    SSYState st(a, r0, q1, opts.breakdown_rel_tol, opts.retain_bases);
    auto advance = make_engine(rep.x, beta, st.q());

    QuatVector x_last = rep.x;
    rep.status = SolveStatus::maxit;
    for (std::size_t m = 1; m <= opts.maxit; ++m) {
        const StepResult sr = st.step();
        StepOutcome out;
        try {
            out = advance(st, sr);
        } catch (const std::domain_error&) {
            // Both rotation inputs vanished: the projected matrix is singular.
            rep.status = SolveStatus::breakdown_inexact;
            break;
        }
        if (out.x) x_last = *out.x;
        const double est = mon.relative(out.residual_estimate);
        double true_rr = -1.0;
        if (mode == ResidualMode::recomputed) true_rr = mon.relative(true_residual(a, b, x_last));
        const double rr = mode == ResidualMode::recomputed ? true_rr : est;
        mon.record(rep, m, rr, est);

        if (sr.kind != StepKind::advanced) {
            if (true_rr < 0.0) true_rr = mon.relative(true_residual(a, b, x_last));
            rep.status = true_rr <= opts.tol ? SolveStatus::breakdown_exact : SolveStatus::breakdown_inexact;
            rep.final_true_rr = true_rr;
            break;
        }
        if (out.x && rr <= opts.tol) {
            if (true_rr < 0.0) true_rr = mon.relative(true_residual(a, b, x_last));
            if (true_rr <= opts.tol) {
                rep.status = SolveStatus::converged;
                rep.final_true_rr = true_rr;
                break;
            }
        }
    }
    rep.x = std::move(x_last);
    if (rep.status == SolveStatus::maxit || rep.status == SolveStatus::breakdown_inexact)
        rep.final_true_rr = mon.relative(true_residual(a, b, rep.x));
    if (opts.retain_bases) {
        rep.P = st.P();
        rep.Q = st.Q();
    }
    mon.finish(rep);
    return rep;
}

} // namespace detail

} // namespace qssy
