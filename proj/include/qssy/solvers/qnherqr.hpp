#pragma once

#include "qssy/solvers/driver.hpp"
#include "qssy/solvers/recurrences.hpp"

namespace qssy {

// Minimum-residual solver: x_m minimizes ||b - A x|| over x0 + span(q_1..q_m),
// via the QR factorization of the augmented tridiagonal matrix. The monitored
// residual is |rho_m|, confirmed by one true residual at termination.
inline SolveReport qnherqr_solve(const QuatMatrix& a, const QuatVector& b, const SolveOptions& opts = {}) {
    const ResidualMode mode = opts.residual_mode.value_or(ResidualMode::recurrence);
    return detail::run_ssy_solver(a, b, opts, mode, [](const QuatVector& x0, double beta, const QuatVector&) {
        return [eng = MinResEngine(x0, beta), gamma_prev = 0.0](const SSYState& st,
                                                               const StepResult& sr) mutable -> detail::StepOutcome {
            // q_{m+1} is the predecessor of the vector the step just produced.
            eng.update(gamma_prev, sr.alpha, sr.beta, st.q_prev());
            gamma_prev = sr.gamma;
            return {&eng.x(), eng.residual()};
        };
    });
}

} // namespace qssy
