#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "dirichlet/errors.hpp"
#include "dirichlet/harness.hpp"

namespace dirichlet::harness {

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kSolverError = 2 };

void print_report(const RunReport& report, bool verbose)
{
    std::printf("%s: %s, N = %zu, %zu interior samples\n", report.command.c_str(), report.geometry.c_str(), report.n,
                report.interior_samples);
    for (const auto& [name, s] : report.solvers) {
        std::printf("  %s:", name.c_str());
        if (s.c1)
            std::printf(" C1 = %.6f C2 = %.3e", *s.c1, *s.c2);
        if (s.calibration_relative_rms_residual)
            std::printf(" rel. residual = %.3e", *s.calibration_relative_rms_residual);
        if (s.interior_error)
            std::printf(" max err = %.3e rms err = %.3e", s.interior_error->max, s.interior_error->rms);
        std::printf("\n");
        if (verbose)
            std::printf("    times [s]: assembly %.4f, solve %.4f, evaluation %.4f\n", s.times.assembly, s.times.solve,
                        s.times.evaluation);
    }
    for (const auto& [name, s] : report.comparison)
        std::printf("  %s: max %.3e rms %.3e\n", name.c_str(), s.max, s.rms);
}

}  // namespace

int run_cli(int argc, char** argv)
{
    CLI::App app{"Dirichlet-Laplace solvers: singular-source single layer and classical BEM"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    unsigned threads = 1;
    bool verbose = false;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON problem configuration")->required();
        sub->add_option("--out-dir", out_dir, "directory for output files");
        sub->add_option("--threads", threads, "worker threads (0 = auto)");
        sub->add_flag("--verbose", verbose, "print timings and progress");
    };
    CLI::App* solve = app.add_subcommand("solve", "run the selected solvers, write report and field dump");
    CLI::App* compare = app.add_subcommand("compare", "solver-vs-solver and solver-vs-oracle deltas");
    CLI::App* scan = app.add_subcommand("calibration-scan", "fitted C1, C2 per boundary mode");
    CLI::App* convergence = app.add_subcommand("convergence", "errors and timings over an N sweep");
    for (CLI::App* sub : {solve, compare, scan, convergence})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kConfigError;
    }

    try {
        const ProblemConfig cfg = load_config(config_path);
        RunOptions options{out_dir, threads, verbose};
        if (solve->parsed()) {
            print_report(cmd_solve(cfg, options), verbose);
        } else if (compare->parsed()) {
            print_report(cmd_compare(cfg, options), verbose);
        } else if (scan->parsed()) {
            const ScanResult result = cmd_calibration_scan(cfg, options);
            std::printf("%4s %14s %14s %14s %14s\n", "k", "C1", "C2", "rms_residual", "predicted_C1");
            for (const auto& row : result.rows)
                std::printf("%4d %14.8f %14.3e %14.3e %14.8f\n", row.k, row.c1, row.c2, row.rms_residual,
                            2.0 * result.radius / row.k);
        } else if (convergence->parsed()) {
            for (const auto& row : cmd_convergence(cfg, options)) {
                std::printf("N = %6zu", row.n);
                if (row.err_ss)
                    std::printf("  err_ss = %.3e", *row.err_ss);
                if (row.err_bem)
                    std::printf("  err_bem = %.3e", *row.err_bem);
                if (row.ss_times)
                    std::printf("  t_ss_eval = %.4fs", row.ss_times->evaluation);
                std::printf("\n");
            }
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const SolverError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return kSolverError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kSolverError;
    }
    return kOk;
}

}  // namespace dirichlet::harness
