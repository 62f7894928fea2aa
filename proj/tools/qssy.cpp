// Command-line driver: run, verify, deblur, filter-demo.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qssy/cli/config.hpp"
#include "qssy/cli/runner.hpp"
#include "qssy/cli/verify.hpp"

namespace {

using namespace qssy::cli;

// Options shared by every solving subcommand; unset values keep the config's.
struct Overrides {
    std::vector<std::string> solvers;
    std::optional<double> tol;
    std::optional<std::size_t> maxit;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;

    void attach(CLI::App* app) {
        app->add_option("--solver", solvers, "qnherlq, qnherqr or qgmres; repeatable")->delimiter(',');
        app->add_option("--tol", tol, "relative residual tolerance");
        app->add_option("--maxit", maxit, "iteration limit");
        app->add_option("--seed", seed, "random seed");
        app->add_option("--out", out, "output directory");
    }

    void apply(ExperimentConfig& cfg) const {
        if (!solvers.empty()) {
            cfg.solvers.clear();
            for (const auto& s : solvers) cfg.solvers.push_back(parse_solver(s));
        }
        if (tol) cfg.tol = *tol;
        if (maxit) cfg.maxit = *maxit;
        if (seed) cfg.seed = *seed;
        if (out) cfg.out_dir = *out;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quaternion non-Hermitian linear system solvers"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides run_ov;
    auto* run = app.add_subcommand("run", "solve the problem described by a config file");
    run->add_option("--config", config_path, "flat key = value config file")->required();
    run_ov.attach(run);

    VerifyOptions vo;
    auto* ver = app.add_subcommand("verify", "run the oracle and invariant checks");
    ver->add_option("--n", vo.n, "problem size")->capture_default_str();
    ver->add_option("--seed", vo.seed, "random seed")->capture_default_str();
    ver->add_flag("--corrupt-plane", vo.corrupt_plane, "break the real representation structure (negative control)");
    ver->add_flag("--hermitian", vo.hermitian, "Hermitian matrix with equal starting vectors");

    ExperimentConfig deblur_cfg;
    deblur_cfg.problem = ProblemKind::blur_multichannel;
    deblur_cfg.solvers = {SolverKind::qnherqr};
    deblur_cfg.out_dir = "out/deblur";
    Overrides deblur_ov;
    auto* deb = app.add_subcommand("deblur", "restore a PNG blurred by the cross-channel Gaussian-uniform operator");
    deb->add_option("--image", deblur_cfg.image_path, "square PNG image")->required();
    deb->add_option("--sigma", deblur_cfg.sigma, "Gaussian width")->capture_default_str();
    deb->add_option("--r", deblur_cfg.r, "Gaussian band half-width")->capture_default_str();
    deb->add_option("--s", deblur_cfg.s, "uniform band half-width")->capture_default_str();
    deb->add_flag("--rgba", deblur_cfg.image_rgba, "keep the alpha channel in the real part");
    deblur_ov.attach(deb);

    ExperimentConfig filter_cfg;
    filter_cfg.problem = ProblemKind::lorenz_filter;
    filter_cfg.out_dir = "out/filter";
    std::size_t filter_n = 100;
    std::optional<double> noise;
    Overrides filter_ov;
    auto* fil = app.add_subcommand("filter-demo", "design a quaternion filter for a noisy Lorenz signal");
    fil->add_option("--n", filter_n, "system size (p + 1 = q + 1 = n)")->capture_default_str();
    fil->add_option("--noise-sigma", noise, "noise standard deviation (default 1% of the signal RMS)");
    filter_ov.attach(fil);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_io;
    }

    try {
        if (*ver) return verify(vo, std::cout);

        ExperimentConfig cfg;
        if (*run) {
            cfg = load_config(config_path);
            run_ov.apply(cfg);
        } else if (*deb) {
            cfg = deblur_cfg;
            deblur_ov.apply(cfg);
        } else {
            if (filter_n < 1) throw std::invalid_argument("filter-demo: n must be positive");
            cfg = filter_cfg;
            cfg.p = cfg.q = filter_n - 1;
            cfg.noise_sigma = noise;
            filter_ov.apply(cfg);
        }
        const int code = run_experiment(cfg, std::cout);
        std::cout << "results in " << cfg.out_dir << "\n";
        return code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    }
}
