#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qssy/counters.hpp"
#include "qssy/matrix.hpp"
#include "qssy/vector.hpp"

namespace qssy {

enum class ResidualMode { recomputed, recurrence };

enum class SolveStatus {
    converged,
    breakdown_exact,   // recurrence terminated and the true residual confirmed the solution
    breakdown_inexact, // recurrence terminated but the iterate misses the tolerance
    maxit,
};

inline const char* to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::breakdown_exact: return "breakdown_exact";
    case SolveStatus::breakdown_inexact: return "breakdown_inexact";
    case SolveStatus::maxit: return "maxit";
    }
    return "?";
}

inline const char* to_string(ResidualMode m) { return m == ResidualMode::recomputed ? "recomputed" : "recurrence"; }

inline bool succeeded(SolveStatus s) { return s == SolveStatus::converged || s == SolveStatus::breakdown_exact; }

struct IterationInfo {
    std::size_t iter = 0;
    double rr = 0.0;          // monitored relative residual
    double rr_estimate = 0.0; // value from the short recurrence
    double wall_seconds = 0.0;
};

struct SolveOptions {
    double tol = 1e-6;
    std::size_t maxit = 5000;
    std::optional<QuatVector> x0;
    double breakdown_rel_tol = 1e-13;
    std::optional<ResidualMode> residual_mode; // unset: solver default
    std::optional<QuatVector> q1;              // right starting vector; default r0/||r0||
    bool retain_bases = false;                 // copy p_j, q_j into the report (tests)
    std::function<void(const IterationInfo&)> on_iteration;
};

struct SolveReport {
    QuatVector x;
    SolveStatus status = SolveStatus::maxit;
    std::size_t iters = 0;
    std::vector<double> rr_history;       // entry 0 is the initial residual
    std::vector<double> estimate_history; // recurrence values, same indexing
    std::vector<double> time_history;
    double wall_seconds = 0.0;
    double final_true_rr = 0.0;
    std::uint64_t matvecs = 0;
    std::vector<QuatVector> P, Q;
};

namespace detail {

inline void validate(const SolveOptions& o, const QuatMatrix& a, const QuatVector& b) {
    if (!(o.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (o.maxit < 1) throw std::invalid_argument("maxit must be at least 1");
    if (a.rows() != a.cols()) throw dimension_error("solver: matrix must be square");
    if (b.size() != a.rows()) throw dimension_error("solver: right-hand side length mismatch");
    if (o.x0 && o.x0->size() != b.size()) throw dimension_error("solver: x0 length mismatch");
    if (o.q1 && o.q1->size() != b.size()) throw dimension_error("solver: q1 length mismatch");
}

// Bookkeeping shared by the iterative drivers: relative residuals against
// ||b||, history, callbacks and wall time.
class Monitor {
public:
    Monitor(const SolveOptions& opts, double bnorm)
        : opts_(opts), bnorm_(bnorm), start_(std::chrono::steady_clock::now()),
          matvecs_start_(op_counters().total_matvecs()) {}

    double relative(double residual_norm) const { return bnorm_ > 0.0 ? residual_norm / bnorm_ : 0.0; }

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    void record(SolveReport& rep, std::size_t iter, double rr, double estimate) const {
        const double t = elapsed();
        rep.rr_history.push_back(rr);
        rep.estimate_history.push_back(estimate);
        rep.time_history.push_back(t);
        rep.iters = iter;
        if (opts_.on_iteration) opts_.on_iteration({iter, rr, estimate, t});
    }

    void finish(SolveReport& rep) const {
        rep.wall_seconds = elapsed();
        rep.matvecs = op_counters().total_matvecs() - matvecs_start_;
    }

private:
    const SolveOptions& opts_;
    double bnorm_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t matvecs_start_;
};

inline double true_residual(const QuatMatrix& a, const QuatVector& b, const QuatVector& x) {
    QuatVector r = b - matvec(a, x);
    return norm2(r);
}

inline double true_residual_adj(const QuatMatrix& a, const QuatVector& c, const QuatVector& z) {
    QuatVector r = c - matvec_adj(a, z);
    return norm2(r);
}

} // namespace detail
} // namespace qssy
