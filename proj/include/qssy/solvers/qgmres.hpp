#pragma once

#include <algorithm>
#include <vector>

#include "qssy/givens.hpp"
#include "qssy/solvers/common.hpp"

namespace qssy {

// Baseline: quaternion Arnoldi (modified Gram-Schmidt, right coefficients) with
// the Hessenberg least-squares problem solved by quaternion Givens rotations.
// No restarting, so memory grows with the iteration count.
inline SolveReport qgmres_solve(const QuatMatrix& a, const QuatVector& b, const SolveOptions& opts = {}) {
    detail::validate(opts, a, b);
    const double bnorm = norm2(b);
    detail::Monitor mon(opts, bnorm);
    SolveReport rep;
    const QuatVector x0 = opts.x0 ? *opts.x0 : QuatVector(b.size());
    QuatVector r0 = opts.x0 ? b - matvec(a, x0) : b;
    const double beta = norm2(r0);
    const double rr0 = mon.relative(beta);
    mon.record(rep, 0, rr0, rr0);
    rep.x = x0;
    if (bnorm == 0.0 || rr0 <= opts.tol) {
        rep.status = SolveStatus::converged;
        rep.final_true_rr = rr0;
        mon.finish(rep);
        return rep;
    }

    std::vector<QuatVector> v;
    scale(r0, 1.0 / beta);
    v.push_back(std::move(r0));
    std::vector<std::vector<Quaternion>> rcols;
    std::vector<GivensQ> rots;
    std::vector<Quaternion> g{Quaternion{beta}};

    auto assemble = [&](std::size_t k) {
        std::vector<Quaternion> y(k);
        for (std::size_t jj = k; jj-- > 0;) {
            Quaternion s = g[jj];
            for (std::size_t kk = jj + 1; kk < k; ++kk) s -= rcols[kk][jj] * y[kk];
            y[jj] = qinv(rcols[jj][jj]) * s;
        }
        QuatVector x = x0;
        for (std::size_t jj = 0; jj < k; ++jj) add_right(x, v[jj], y[jj]);
        return x;
    };

    double max_h = 0.0;
    rep.status = SolveStatus::maxit;
    for (std::size_t j = 0; j < opts.maxit; ++j) {
        QuatVector w = matvec(a, v[j]);
        max_h = std::max(max_h, norm2(w));
        std::vector<Quaternion> h(j + 2);
        for (std::size_t i = 0; i <= j; ++i) {
            h[i] = inner(w, v[i]);
            add_right(w, v[i], -h[i]);
        }
        const double hnext = norm2(w);
        h[j + 1] = Quaternion{hnext};
        for (std::size_t i = 0; i < j; ++i) {
            const Quaternion top = rots[i].c * h[i] + rots[i].s * h[i + 1];
            h[i + 1] = -(qconj(rots[i].s) * h[i]) + rots[i].c * h[i + 1];
            h[i] = top;
        }
        const ColumnRotation rot = quat_givens(h[j], h[j + 1]);
        h[j] = rot.xi;
        h.pop_back();
        rcols.push_back(std::move(h));
        rots.push_back(rot.g);
        g.push_back(-(qconj(rot.g.s) * g[j]));
        g[j] = rot.g.c * g[j];

        const double rr = mon.relative(qmod(g[j + 1]));
        mon.record(rep, j + 1, rr, rr);
        const bool lucky = hnext <= opts.breakdown_rel_tol * std::max(1.0, max_h);
        if (rr <= opts.tol || lucky) {
            QuatVector x = assemble(j + 1);
            const double true_rr = mon.relative(detail::true_residual(a, b, x));
            if (true_rr <= opts.tol || lucky) {
                rep.x = std::move(x);
                rep.final_true_rr = true_rr;
                rep.status = true_rr <= opts.tol ? (lucky ? SolveStatus::breakdown_exact : SolveStatus::converged)
                                                 : SolveStatus::breakdown_inexact;
                mon.finish(rep);
                return rep;
            }
        }
        scale(w, 1.0 / hnext);
        v.push_back(std::move(w));
    }
    rep.x = assemble(rcols.size());
    rep.final_true_rr = mon.relative(detail::true_residual(a, b, rep.x));
    mon.finish(rep);
    return rep;
}

} // namespace qssy
