#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "bsde/analysis.hpp"
#include "bsde/errors.hpp"
#include "bsde/problems.hpp"
#include "bsde/report.hpp"
#include "bsde/scheme.hpp"
#include "bsde/stability.hpp"

namespace {

struct RunConfig {
    std::string problem;
    double a = -0.5;
    double x0 = 1.0;
    std::vector<double> alphas = {0.25, 0.5, 0.75, 1.0};
    std::vector<int> step_counts = {8, 16, 32, 64, 128};
    std::vector<double> eps = {1e-4, 1e-3, 1e-2};
    int quad_order = 12;
    double halfwidth_sigmas = 6.0;
    int grid_points = 257;
    std::string out_dir = ".";
    bool emit_svg = false;
};

bsde::FbsdeProblem resolve_problem(const RunConfig& cfg) {
    if (cfg.problem == "example1") return bsde::example1();
    if (cfg.problem == "example2") return bsde::example2(cfg.a, cfg.x0);
    throw bsde::ConfigError("unknown problem '" + cfg.problem +
                            "' (available: example1, example2)");
}

bsde::SchemeParams scheme_params(const RunConfig& cfg, double alpha) {
    bsde::SchemeParams params;
    params.alpha = alpha;
    params.quad_order = cfg.quad_order;
    params.halfwidth_sigmas = cfg.halfwidth_sigmas;
    params.grid_points = cfg.grid_points;
    params.validate();
    return params;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

int run_solve(const RunConfig& cfg) {
    const auto problem = resolve_problem(cfg);
    const auto params = scheme_params(cfg, cfg.alphas.front());
    const int n = cfg.step_counts.front();
    const auto res = bsde::solve(problem, params, n);
    std::cout << "problem=" << problem.name << "\nalpha=" << fmt_short(params.alpha)
              << "\nN=" << n << "\ny0=" << fmt(res.y0) << "\nz0=" << fmt(res.z0) << '\n';
    if (res.err_y) std::cout << "err_y=" << fmt(*res.err_y) << '\n';
    if (res.err_z) std::cout << "err_z=" << fmt(*res.err_z) << '\n';
    std::cout << "runtime_s=" << fmt(res.wall_seconds)
              << "\nout_of_domain_evals=" << res.out_of_domain_evals << '\n';
    return 0;
}

int run_converge(const RunConfig& cfg) {
    const auto problem = resolve_problem(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    for (const double alpha : cfg.alphas) {
        const auto params = scheme_params(cfg, alpha);
        const auto report = bsde::run_convergence_study(problem, params, cfg.step_counts);
        const auto stem = std::filesystem::path(cfg.out_dir) / bsde::report_stem(report);
        auto csv = stem;
        csv += ".csv";
        bsde::write_report_csv(report, csv);
        std::cout << "wrote " << csv.string();
        if (cfg.emit_svg) {
            auto svg = stem;
            svg += ".svg";
            bsde::write_report_svg(report, svg);
            std::cout << " and " << svg.string();
        }
        std::cout << "  (CR_y=" << (report.cr_y ? fmt_short(*report.cr_y) : "NA")
                  << ", CR_z=" << (report.cr_z ? fmt_short(*report.cr_z) : "NA") << ")\n";
    }
    return 0;
}

int run_stability(const RunConfig& cfg) {
    const auto problem = resolve_problem(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    const double alpha = cfg.alphas.front();
    const auto params = scheme_params(cfg, alpha);
    const auto file = std::filesystem::path(cfg.out_dir) /
                      ("stability_" + problem.name + "_" + fmt_short(alpha) + ".csv");
    std::ofstream out(file);
    if (!out) throw bsde::NumericalError("cannot open for writing: " + file.string());
    out << "c,N,dev,dev_y0,dev_z_sum\n";
    for (const double c : cfg.eps) {
        for (const int n : cfg.step_counts) {
            const auto base = bsde::solve(problem, params, n, /*keep_fields=*/true);
            bsde::PerturbationSpec pert;
            pert.eps_f = [c](double, double, double) { return c; };
            const auto perturbed =
                bsde::solve_perturbed(problem, params, n, pert, /*keep_fields=*/true);
            const auto dev = bsde::deviation(base, perturbed);
            out << fmt(c) << ',' << n << ',' << fmt(dev.dev) << ',' << fmt(dev.y0_at_x0) << ','
                << fmt(dev.z_sup_sq_sum) << '\n';
        }
    }
    if (!out.flush()) throw bsde::NumericalError("write failed: " + file.string());
    std::cout << "wrote " << file.string() << '\n';
    return 0;
}

int run_problems() {
    std::cout << "example1  T=1, x0=0: f(y) = -y^3 + 2.5 y^2 - 1.5 y, logistic terminal data;\n"
              << "          exact (Y0, Z0) = (0.5, 0.25)\n"
              << "example2  T=1, parameters --a, --x0: f(y) = -y^3 + (1+a) y^2 - a y,\n"
              << "          terminal (1+e^x)^-1; a=-0.5, x0=1 gives (Y0, Z0) = (0.5, -0.25)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"one-step predictor-corrector solver for decoupled FBSDEs"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value configuration file ('#' comments)");
    app.allow_config_extras(CLI::config_extras_mode::error);
    // keys like quadrature.K are flat, not sections
    app.get_config_formatter_base()->parentSeparator('\x1f');
    app.footer("Environment: BSDE_THREADS caps worker parallelism (0 = auto).");

    const auto alpha_check = CLI::Validator(
        [](std::string& s) -> std::string {
            const double v = std::strtod(s.c_str(), nullptr);
            if (!(v > 0.0) || !(v <= 1.0)) return "alpha must lie in (0, 1]: " + s;
            return {};
        },
        "ALPHA in (0,1]");
    const auto odd_points_check = CLI::Validator(
        [](std::string& s) -> std::string {
            const long v = std::strtol(s.c_str(), nullptr, 10);
            if (v < 5 || v % 2 == 0) return "grid points must be odd and >= 5: " + s;
            return {};
        },
        "ODD >= 5");

    app.add_option("--problem", cfg.problem, "built-in problem name (example1 | example2)");
    app.add_option("--a", cfg.a, "example2 generator parameter a")->capture_default_str();
    app.add_option("--x0", cfg.x0, "example2 initial state")->capture_default_str();
    app.add_option("--alpha", cfg.alphas, "scheme parameter(s) in (0,1]")
        ->delimiter(',')
        ->check(alpha_check)
        ->capture_default_str();
    app.add_option("--N", cfg.step_counts, "time step count(s)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--eps", cfg.eps, "stability sweep: generator perturbation size(s)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--quadrature.K", cfg.quad_order, "Gauss-Hermite order")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    app.add_option("--grid.halfwidth_sigmas", cfg.halfwidth_sigmas,
                   "grid core half-width in diffusion units")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--grid.points", cfg.grid_points, "spatial grid points (odd)")
        ->check(odd_points_check)
        ->capture_default_str();
    app.add_option("--out", cfg.out_dir, "output directory for CSV/SVG artifacts")
        ->capture_default_str();
    app.add_flag("--svg", cfg.emit_svg, "also emit log-log SVG plots");

    auto* solve_cmd = app.add_subcommand("solve", "single backward solve, prints y0/z0");
    auto* converge_cmd =
        app.add_subcommand("converge", "error/rate study over N, writes per-alpha CSVs");
    auto* stability_cmd =
        app.add_subcommand("stability", "perturbation sweep, writes a deviation CSV");
    auto* problems_cmd = app.add_subcommand("problems", "list built-in problems");
    for (auto* sub : {solve_cmd, converge_cmd, stability_cmd, problems_cmd}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (problems_cmd->parsed()) return run_problems();
        if (cfg.problem.empty()) {
            std::cerr << "error: --problem is required for this subcommand\n";
            return 2;
        }
        if (solve_cmd->parsed()) return run_solve(cfg);
        if (converge_cmd->parsed()) return run_converge(cfg);
        if (stability_cmd->parsed()) return run_stability(cfg);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const bsde::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
