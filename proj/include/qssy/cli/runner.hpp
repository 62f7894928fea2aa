#pragma once

#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "qssy/cli/config.hpp"
#include "qssy/imaging.hpp"
#include "qssy/problems/blur.hpp"
#include "qssy/problems/lorenz.hpp"
#include "qssy/problems/matrix_market.hpp"
#include "qssy/problems/random.hpp"
#include "qssy/solvers.hpp"

namespace qssy::cli {

enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_maxit = 2, exit_io = 3, exit_breakdown = 4 };

struct Problem {
    std::string description;
    QuatMatrix A;
    QuatVector b;
    std::optional<QuatVector> x_true;
    std::optional<QuatImage> image; // ground truth for imaging problems
};

inline Problem build_problem(const ExperimentConfig& cfg) {
    Problem pr;
    std::ostringstream desc;
    desc << to_string(cfg.problem);
    auto with_ones = [&pr]() {
        pr.x_true = ones(pr.A.cols());
        pr.b = matvec(pr.A, *pr.x_true);
    };
    auto load_image = [&]() {
        pr.image = load_png(cfg.image_path, cfg.image_rgba ? PngMode::rgba_full : PngMode::rgb_pure);
        desc << " image=" << cfg.image_path << " (" << pr.image->height << "x" << pr.image->width << ")";
    };
    auto image_rhs = [&pr]() {
        pr.x_true = vec(*pr.image);
        pr.b = matvec(pr.A, *pr.x_true);
    };

    switch (cfg.problem) {
    case ProblemKind::matrix_market: {
        const RealSparse a0 = load_matrix_market(cfg.matrix_path);
        pr.A = scale_to_quaternion(a0, cfg.scale[0], cfg.scale[1], cfg.scale[2]);
        desc << " matrix=" << cfg.matrix_path << " n=" << a0.rows << " nnz=" << a0.nnz();
        with_ones();
        break;
    }
    case ProblemKind::random_dense: {
        Rng rng(cfg.seed);
        pr.A = random_well_conditioned(cfg.n, rng);
        desc << " n=" << cfg.n << " seed=" << cfg.seed;
        with_ones();
        break;
    }
    case ProblemKind::lorenz_filter: {
        if (cfg.p != cfg.q) throw std::invalid_argument("lorenz_filter: p and q must agree for a square system");
        const LorenzSeries series = lorenz_trajectory(cfg.t_end, cfg.dt, {2.0, 3.0, 4.0});
        const double sigma = cfg.noise_sigma.value_or(0.01 * series_rms(series));
        FilterSystem fs = build_filter_system(series, sigma, cfg.p, cfg.q, cfg.seed);
        pr.A = std::move(fs.X);
        pr.b = std::move(fs.y);
        desc << " n=" << cfg.p + 1 << " noise_sigma=" << sigma << " seed=" << cfg.seed;
        break;
    }
    case ProblemKind::blur_multichannel: {
        std::size_t n = cfg.n;
        if (!cfg.image_path.empty()) {
            load_image();
            if (pr.image->height != pr.image->width)
                throw std::invalid_argument("blur_multichannel: image must be square");
            n = pr.image->height;
        }
        pr.A = multichannel_blur(n, cfg.sigma, cfg.r, cfg.s);
        desc << " sigma=" << cfg.sigma << " r=" << cfg.r << " s=" << cfg.s;
        if (pr.image) image_rhs();
        else with_ones();
        break;
    }
    case ProblemKind::blur_motion: {
        std::size_t h = cfg.n, w = cfg.n;
        if (!cfg.image_path.empty()) {
            load_image();
            h = pr.image->height;
            w = pr.image->width;
        }
        pr.A = scale_to_quaternion(motion_blur_matrix(h, w, cfg.len), cfg.scale[0], cfg.scale[1], cfg.scale[2]);
        desc << " len=" << cfg.len;
        if (pr.image) image_rhs();
        else with_ones();
        break;
    }
    }
    pr.description = desc.str();
    return pr;
}

inline SolveReport run_solver(SolverKind kind, const QuatMatrix& a, const QuatVector& b, const SolveOptions& o) {
    switch (kind) {
    case SolverKind::qnherlq: return qnherlq_solve(a, b, o);
    case SolverKind::qnherqr: return qnherqr_solve(a, b, o);
    case SolverKind::qgmres: return qgmres_solve(a, b, o);
    }
    throw std::invalid_argument("unknown solver");
}

inline void write_convergence_csv(const SolveReport& rep, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write '" + path.string() + "'");
    out << "iter,rr,wall_seconds\n" << std::setprecision(17);
    for (std::size_t k = 0; k < rep.rr_history.size(); ++k)
        out << k << ',' << rep.rr_history[k] << ',' << rep.time_history[k] << '\n';
    if (!out) throw io_error("write failed for '" + path.string() + "'");
}

namespace detail {

// JSON has no infinity; identical images report "inf".
inline nlohmann::json metric(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

inline void add_image_metrics(nlohmann::json& j, const std::string& prefix, const QuatImage& truth, const QuatImage& img) {
    j["psnr_" + prefix] = metric(psnr(truth, img));
    j["ssim_" + prefix] = metric(ssim(truth, img));
    j["re_" + prefix] = metric(rel_error(truth, img));
}

} // namespace detail

// Builds the problem, runs every configured solver from x0 = 0 and writes
// <solver>_convergence.csv, summary.json and, for imaging problems, PNGs.
inline int run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
    cfg.validate();
    const Problem pr = build_problem(cfg);
    const std::filesystem::path out_dir(cfg.out_dir);
    std::filesystem::create_directories(out_dir);
    log << "problem: " << pr.description << "\n";

    nlohmann::json summary;
    summary["problem"] = to_string(cfg.problem);
    summary["description"] = pr.description;
    summary["n"] = pr.A.rows();
    summary["tol"] = cfg.tol;
    summary["maxit"] = cfg.maxit;
    summary["seed"] = cfg.seed;

    std::optional<QuatImage> blurred;
    if (pr.image) {
        const QuatImage& truth = *pr.image;
        blurred = unvec(pr.b, truth.height, truth.width, truth.has_alpha);
        summary["psnr_samples_per_pixel"] = truth.samples_per_pixel();
        detail::add_image_metrics(summary, "blurred", truth, *blurred);
        save_png(truth, (out_dir / "original.png").string());
        save_png(*blurred, (out_dir / "blurred.png").string());
    }

    bool any_maxit = false, any_breakdown = false;
    for (SolverKind kind : cfg.solvers) {
        SolveOptions o;
        o.tol = cfg.tol;
        o.maxit = cfg.maxit;
        o.residual_mode = cfg.residual_mode;
        const std::clock_t c0 = std::clock();
        const SolveReport rep = run_solver(kind, pr.A, pr.b, o);
        const double cpu = double(std::clock() - c0) / CLOCKS_PER_SEC;
        const std::string name = to_string(kind);
        write_convergence_csv(rep, out_dir / (name + "_convergence.csv"));

        nlohmann::json s;
        s["status"] = to_string(rep.status);
        s["iterations"] = rep.iters;
        s["cpu_seconds"] = cpu;
        s["wall_seconds"] = rep.wall_seconds;
        s["final_rr"] = rep.final_true_rr;
        s["matvecs"] = rep.matvecs;
        if (pr.x_true) s["solution_rel_error"] = norm2(rep.x - *pr.x_true) / norm2(*pr.x_true);
        if (pr.image) {
            const QuatImage restored = unvec(rep.x, pr.image->height, pr.image->width, pr.image->has_alpha);
            detail::add_image_metrics(s, "restored", *pr.image, restored);
            save_png(restored, (out_dir / ("restored_" + name + ".png")).string());
        }
        summary["solvers"][name] = s;

        log << std::left << std::setw(8) << name << " " << std::setw(17) << to_string(rep.status) << " it="
            << rep.iters << " rr=" << std::scientific << std::setprecision(3) << rep.final_true_rr
            << std::defaultfloat << " cpu=" << std::fixed << std::setprecision(3) << cpu << "s" << std::defaultfloat;
        if (pr.image) log << " psnr=" << std::setprecision(4) << psnr(*pr.image, unvec(rep.x, pr.image->height, pr.image->width, pr.image->has_alpha));
        log << "\n";

        any_maxit |= rep.status == SolveStatus::maxit || rep.status == SolveStatus::breakdown_inexact;
        any_breakdown |= rep.status == SolveStatus::breakdown_exact;
    }

    std::ofstream out(out_dir / "summary.json");
    if (!out) throw io_error("cannot write summary in '" + out_dir.string() + "'");
    out << summary.dump(2) << "\n";
    if (any_maxit) return exit_maxit;
    if (any_breakdown) return exit_breakdown;
    return exit_ok;
}

} // namespace qssy::cli
