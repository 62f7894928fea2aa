#pragma once

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <string>

#include <Eigen/SVD>

#include "qssy/dense_reduce.hpp"
#include "qssy/problems/random.hpp"
#include "qssy/real_rep.hpp"
#include "qssy/solvers.hpp"
#include "qssy/ssy.hpp"

namespace qssy::cli {

struct VerifyOptions {
    std::size_t n = 12;
    std::uint64_t seed = 1;
    bool corrupt_plane = false; // perturb one block of R(A) before the structure check
    bool hermitian = false;     // zero-mean Hermitian A with p_1 = q_1
};

namespace detail {

class CheckLog {
public:
    explicit CheckLog(std::ostream& out) : out_(out) {}

    void check(const std::string& name, double value, double tol) {
        const bool ok = value <= tol;
        failures_ += ok ? 0 : 1;
        out_ << (ok ? "PASS " : "FAIL ") << std::left << std::setw(34) << name << std::right << std::scientific
             << std::setprecision(3) << value << " <= " << tol << std::defaultfloat << "\n";
    }

    int failures() const { return failures_; }

private:
    std::ostream& out_;
    int failures_ = 0;
};

inline Eigen::VectorXd singular_values(const QuatMatrix& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(real_rep(m));
    return svd.singularValues();
}

} // namespace detail

// Oracle and invariant suite on one seeded random problem; exit 0 iff all pass.
inline int verify(const VerifyOptions& vo, std::ostream& out) {
    if (vo.n < 2) throw std::invalid_argument("verify: n must be at least 2");
    Rng rng(vo.seed);
    const std::size_t n = vo.n;
    const QuatMatrix A = vo.hermitian ? random_hermitian(n, rng) : random_well_conditioned(n, rng);
    const QuatVector b = random_vector(n, rng);
    const QuatVector c = vo.hermitian ? b : random_vector(n, rng);
    const double fro = A.frobenius_norm();
    detail::CheckLog log(out);
    out << "verify n=" << n << " seed=" << vo.seed << (vo.hermitian ? " hermitian" : "")
        << (vo.corrupt_plane ? " corrupt-plane" : "") << "\n";

    RealRep R = real_rep(A);
    if (vo.corrupt_plane) R(Eigen::Index(n), 0) += 1e-3;
    log.check("real representation JRS defect", jrs_defect(R), 1e-12);

    const std::size_t m = std::min<std::size_t>(n, 30);
    SSYState st(A, b, c, 1e-13, true);
    std::size_t taken = 0;
    while (taken < m && !st.terminated()) {
        st.step();
        ++taken;
    }
    const FactorizationCheck fc = check_factorization(st, taken);
    log.check("A Q = P T + beta p e^T", fc.res1 / fro, 1e-10);
    log.check("A* P = Q T* + gamma q e^T", fc.res2 / fro, 1e-10);
    log.check("P orthonormality", fc.orthP, 1e-8);
    log.check("Q orthonormality", fc.orthQ, 1e-8);

    if (vo.hermitian) {
        const StrictTridiagonal T = assemble_T(st, taken);
        double sym = 0.0;
        for (std::size_t i = 0; i < T.gamma.size(); ++i) sym = std::max(sym, std::abs(T.beta[i] - T.gamma[i]));
        log.check("T diagonal imaginary part", T.max_imag_abs(), 1e-12);
        log.check("T symmetry |beta - gamma|", sym, 1e-12);
    }

    const QuatVector x_ref = real_direct_solve(A, b);
    SolveOptions o;
    o.tol = 1e-10;
    o.maxit = 10 * n;
    for (auto [name, solve] : {std::pair{"qnherlq", &qnherlq_solve}, std::pair{"qnherqr", &qnherqr_solve}}) {
        const SolveReport rep = solve(A, b, o);
        log.check(std::string(name) + " residual", succeeded(rep.status) ? rep.final_true_rr : 1.0, 1e-10);
        log.check(std::string(name) + " vs direct solve", norm2(rep.x - x_ref) / norm2(x_ref), 1e-7);
    }

    if (n <= 32) {
        const DenseReduction dr = dense_ssy_reduce(A);
        const RealRep RP = real_rep(dr.P), RQ = real_rep(dr.Q);
        const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(RP.rows(), RP.cols());
        log.check("dense reduction P unitary", (RP.transpose() * RP - I).cwiseAbs().maxCoeff(), 1e-11);
        log.check("dense reduction Q unitary", (RQ.transpose() * RQ - I).cwiseAbs().maxCoeff(), 1e-11);
        const Eigen::VectorXd sa = detail::singular_values(A), st_ = detail::singular_values(dr.T.to_dense());
        log.check("dense reduction singular values", (sa - st_).cwiseAbs().maxCoeff() / sa(0), 1e-10);
    }

    out << (log.failures() == 0 ? "all checks passed" : std::to_string(log.failures()) + " check(s) failed") << "\n";
    return log.failures() == 0 ? 0 : 1;
}

} // namespace qssy::cli
