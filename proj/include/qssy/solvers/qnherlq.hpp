#pragma once

#include "qssy/solvers/driver.hpp"
#include "qssy/solvers/recurrences.hpp"

namespace qssy {

// Galerkin solver: x_m in x0 + span(q_1..q_m) with r_m orthogonal to span(p_1..p_m),
// obtained from the LQ factorization of T_m. Defaults to recomputing the true
// residual each iteration (one extra matvec).
inline SolveReport qnherlq_solve(const QuatMatrix& a, const QuatVector& b, const SolveOptions& opts = {}) {
    const ResidualMode mode = opts.residual_mode.value_or(ResidualMode::recomputed);
    return detail::run_ssy_solver(a, b, opts, mode, [](const QuatVector& x0, double beta, const QuatVector& q1) {
        return [eng = GalerkinEngine(x0, beta, q1)](const SSYState& st,
                                                   const StepResult& sr) mutable -> detail::StepOutcome {
            const double gamma = sr.gamma_vanished ? 0.0 : sr.gamma;
            eng.update(sr.alpha, sr.beta, gamma, sr.gamma_vanished ? nullptr : &st.q());
            if (!eng.state().galerkin_defined) return {nullptr, 0.0};
            return {&eng.x(), eng.state().residual};
        };
    });
}

} // namespace qssy
