#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>

#include "dirichlet/classical_bem.hpp"
#include "dirichlet/harness.hpp"
#include "dirichlet/oracles.hpp"
#include "dirichlet/parallel.hpp"

namespace dirichlet::harness {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr const char* kSingularSource = "singular_source";
constexpr const char* kClassicalBem = "classical_bem";
constexpr const char* kOracle = "oracle";

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Runs fn `repeats` times and returns the fastest wall time.
template <class Fn>
double min_time(int repeats, Fn&& fn)
{
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < std::max(repeats, 1); ++i) {
        const auto start = Clock::now();
        fn();
        best = std::min(best, seconds_since(start));
    }
    return best;
}

double radical_inverse(std::uint64_t index, unsigned base)
{
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * double(index % base);
        index /= base;
        f /= base;
    }
    return result;
}

double frac(double x)
{
    return x - std::floor(x);
}

ErrorStats stats(const std::vector<double>& a, const std::vector<double>& b)
{
    ErrorStats s;
    if (a.empty())
        return s;
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double e = std::abs(a[i] - b[i]);
        s.max = std::max(s.max, e);
        sq += e * e;
    }
    s.rms = std::sqrt(sq / double(a.size()));
    return s;
}

const char* geometry_name(GeometryKind k)
{
    switch (k) {
    case GeometryKind::circle: return "circle";
    case GeometryKind::fourier_radial: return "fourier";
    case GeometryKind::sphere: return "sphere";
    }
    return "unknown";
}

std::size_t require_n(const ProblemConfig& cfg)
{
    if (!cfg.n)
        throw ConfigError("config field 'N': missing");
    return *cfg.n;
}

std::filesystem::path output_path(const RunOptions& options, const std::string& name)
{
    std::filesystem::create_directories(options.out_dir);
    return options.out_dir / name;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

// Exact harmonic extension for a circle of any centre and radius.
double circle_exact(const ProblemConfig& cfg, const Vec2& p)
{
    const Vec2 local = (p - cfg.geometry.center) / cfg.geometry.radius;
    return oracles::disk_harmonic_extension(*cfg.boundary, oracles::DiskPoint::from_cartesian(local));
}

struct PlanarProblem {
    MeshPtr mesh;
    BoundaryField f;
    double band = 0.0;
    std::vector<Vec2> samples;
    std::vector<double> exact;
};

PlanarProblem planar_problem(const ProblemConfig& cfg, std::size_t n)
{
    PlanarProblem p;
    p.mesh = mesh_curve(cfg.geometry.curve(), n);
    p.f = cfg.boundary->sample(p.mesh);
    p.band = cfg.band.value_or(p.mesh->default_band());
    for (const Vec3& s : interior_sample_points(cfg, p.band))
        p.samples.emplace_back(s.x(), s.y());
    if (cfg.has_oracle())
        for (const Vec2& s : p.samples)
            p.exact.push_back(circle_exact(cfg, s));
    return p;
}

struct SsRun {
    SingularSourceSolution sol;
    PhaseTimes times;
    std::vector<double> values;
};

SsRun run_singular_source(const ProblemConfig& cfg, const PlanarProblem& prob, const RunOptions& options)
{
    SsRun run;
    auto start = Clock::now();
    run.sol.density = density_for(*cfg.boundary, prob.mesh, cfg.route);
    run.times.assembly = seconds_since(start);

    start = Clock::now();
    const auto f_colloc = cfg.boundary->sample(collocation_points(*prob.mesh).parameters);
    if (cfg.calibration.method == Calibration::Method::two_point) {
        const auto [a, b] = cfg.calibration.indices(prob.mesh->size());
        run.sol.calibration = calibrate_two_point(run.sol.density, f_colloc, a, b);
    } else {
        run.sol.calibration = calibrate_least_squares(run.sol.density, f_colloc);
    }
    run.sol.c1 = run.sol.calibration.c1;
    run.sol.c2 = run.sol.calibration.c2;
    run.times.solve = seconds_since(start);

    run.values.assign(prob.samples.size(), 0.0);
    run.times.evaluation = min_time(cfg.timing_repeats, [&] {
        parallel_for(prob.samples.size(), options.threads,
                     [&](std::size_t i) { run.values[i] = evaluate(run.sol, prob.samples[i]); });
    });
    return run;
}

struct BemRun {
    bem::NeumannData q;
    PhaseTimes times;
    std::vector<double> values;
};

BemRun run_bem(const ProblemConfig& cfg, const PlanarProblem& prob, const RunOptions& options)
{
    BemRun run;
    auto start = Clock::now();
    const bem::BemSystem system = bem::assemble(prob.f, options.threads);
    run.times.assembly = seconds_since(start);

    start = Clock::now();
    run.q = bem::solve_neumann(system);
    run.times.solve = seconds_since(start);

    run.values.assign(prob.samples.size(), 0.0);
    run.times.evaluation = min_time(cfg.timing_repeats, [&] {
        parallel_for(prob.samples.size(), options.threads,
                     [&](std::size_t i) { run.values[i] = bem::representation_sum(prob.f, run.q, prob.samples[i]); });
    });
    return run;
}

SolverReport ss_report(const SsRun& run, const PlanarProblem& prob)
{
    SolverReport r;
    r.c1 = run.sol.c1;
    r.c2 = run.sol.c2;
    r.calibration_method = method_name(run.sol.calibration.method);
    r.calibration_rms_residual = run.sol.calibration.rms_residual;
    r.calibration_relative_rms_residual = run.sol.calibration.relative_rms_residual;
    if (!prob.exact.empty())
        r.interior_error = stats(run.values, prob.exact);
    r.times = run.times;
    return r;
}

SolverReport bem_report(const ProblemConfig& cfg, const BemRun& run, const PlanarProblem& prob)
{
    SolverReport r;
    if (!prob.exact.empty()) {
        r.interior_error = stats(run.values, prob.exact);
        double worst = 0.0;
        for (std::size_t j = 0; j < prob.mesh->size(); ++j) {
            const double exact =
                oracles::disk_neumann_data(*cfg.boundary, prob.mesh->parameter_values[j]) / cfg.geometry.radius;
            worst = std::max(worst, std::abs(run.q.q.values[j] - exact));
        }
        r.neumann_max_error = worst;
    }
    r.times = run.times;
    return r;
}

RunReport base_report(const ProblemConfig& cfg, const char* command, std::size_t n, double band,
                      std::size_t samples)
{
    RunReport report;
    report.command = command;
    report.geometry = geometry_name(cfg.geometry.kind);
    report.dimension = cfg.geometry.dimension();
    report.n = n;
    report.band = band;
    report.interior_samples = samples;
    report.oracle = cfg.has_oracle();
    return report;
}

FieldGrid planar_grid(const ProblemConfig& cfg, const PlanarProblem& prob, const SsRun* ss, const BemRun* bem,
                      const RunOptions& options)
{
    const GridSpec& spec = *cfg.grid;
    FieldGrid grid;
    if (ss) {
        grid = evaluate_grid(ss->sol, spec, prob.band, options.threads);
    } else {
        spec.validate();
        grid.spec = spec;
        grid.band = prob.band;
        grid.rows.resize(spec.size());
        const std::size_t nx = spec.nx();
        parallel_for(grid.rows.size(), options.threads, [&](std::size_t idx) {
            GridRow& row = grid.rows[idx];
            row.x = spec.x(idx % nx);
            row.y = spec.y(idx / nx);
            row.region = classify_point(prob.mesh->source_curve, Vec2(row.x, row.y), prob.band);
        });
    }
    parallel_for(grid.rows.size(), options.threads, [&](std::size_t idx) {
        GridRow& row = grid.rows[idx];
        if (row.region != Region::inside)
            return;
        const Vec2 p(row.x, row.y);
        if (bem)
            row.psi_bem = bem::representation_sum(prob.f, bem->q, p);
        if (cfg.has_oracle()) {
            row.psi_exact = circle_exact(cfg, p);
            if (row.psi_ss)
                row.abs_err_ss = std::abs(*row.psi_ss - *row.psi_exact);
            if (row.psi_bem)
                row.abs_err_bem = std::abs(*row.psi_bem - *row.psi_exact);
        }
    });
    return grid;
}

struct SphereRun {
    SphereSingularSourceSolution sol;
    double band = 0.0;
    std::vector<Vec3> samples;
    std::vector<double> values;
    std::vector<double> exact;
};

SphereRun run_sphere(const ProblemConfig& cfg, const RunOptions& options, SolverReport& report)
{
    SphereRun run;
    const auto quad = make_sphere_quadrature(cfg.geometry.n_lat, cfg.geometry.n_lon);
    run.band = cfg.band.value_or(2.0 * std::numbers::pi / cfg.geometry.n_lat);

    auto start = Clock::now();
    run.sol.density = tangential_laplacian_sphere(*cfg.sphere_boundary, quad);
    report.times.assembly = seconds_since(start);

    start = Clock::now();
    run.sol.calibration = calibrate_least_squares_sphere(run.sol.density, *cfg.sphere_boundary);
    run.sol.c1 = run.sol.calibration.c1;
    run.sol.c2 = run.sol.calibration.c2;
    report.times.solve = seconds_since(start);

    run.samples = interior_sample_points(cfg, run.band);
    run.values.assign(run.samples.size(), 0.0);
    report.times.evaluation = min_time(cfg.timing_repeats, [&] {
        parallel_for(run.samples.size(), options.threads,
                     [&](std::size_t i) { run.values[i] = evaluate(run.sol, run.samples[i]); });
    });
    for (const Vec3& s : run.samples)
        run.exact.push_back(oracles::sphere_harmonic_extension(*cfg.sphere_boundary, s));

    report.c1 = run.sol.c1;
    report.c2 = run.sol.c2;
    report.calibration_method = method_name(run.sol.calibration.method);
    report.calibration_rms_residual = run.sol.calibration.rms_residual;
    report.calibration_relative_rms_residual = run.sol.calibration.relative_rms_residual;
    report.interior_error = stats(run.values, run.exact);
    return run;
}

RunReport solve_sphere(const ProblemConfig& cfg, const RunOptions& options, const char* command)
{
    SolverReport ss;
    SphereRun run = run_sphere(cfg, options, ss);
    RunReport report = base_report(cfg, command, run.sol.density.size(), run.band, run.samples.size());
    report.solvers[kSingularSource] = ss;
    if (std::string(command) == "compare")
        report.comparison["singular_source_vs_oracle"] = *ss.interior_error;

    if (cfg.grid) {
        FieldGrid grid = evaluate_grid(run.sol, *cfg.grid, run.band, options.threads);
        for (GridRow& row : grid.rows) {
            if (row.region != Region::inside)
                continue;
            row.psi_exact = oracles::sphere_harmonic_extension(*cfg.sphere_boundary, Vec3(row.x, row.y, *row.z));
            if (row.psi_ss)
                row.abs_err_ss = std::abs(*row.psi_ss - *row.psi_exact);
        }
        write_field_csv(grid, output_path(options, cfg.outputs.field));
    }
    return report;
}

void write_reports(const ProblemConfig& cfg, const RunOptions& options, const RunReport& report)
{
    write_text(output_path(options, cfg.outputs.report), report_json(report));
    write_text(output_path(options, cfg.outputs.timings), timings_json(report));
}

}  // namespace

std::vector<Vec3> interior_sample_points(const ProblemConfig& cfg, double band)
{
    std::mt19937_64 rng(cfg.seed);
    const auto unit = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };
    const double shift[3] = {unit(), unit(), unit()};

    std::vector<Vec3> points;
    points.reserve(cfg.samples);
    const std::uint64_t max_tries = 64 * std::uint64_t(cfg.samples);
    if (cfg.geometry.kind == GeometryKind::sphere) {
        for (std::uint64_t i = 1; points.size() < cfg.samples && i <= max_tries; ++i) {
            const double u = frac(radical_inverse(i, 2) + shift[0]);
            const double v = frac(radical_inverse(i, 3) + shift[1]);
            const double w = frac(radical_inverse(i, 5) + shift[2]);
            const double r = cfg.sample_radius * std::cbrt(u);
            const double z = 1.0 - 2.0 * v;
            const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
            const Vec3 p = r * Vec3(s * std::cos(kTwoPi * w), s * std::sin(kTwoPi * w), z);
            if (classify_point_sphere(p, band) == Region::inside)
                points.push_back(p);
        }
        return points;
    }

    const ParametricCurve curve = cfg.geometry.curve();
    for (std::uint64_t i = 1; points.size() < cfg.samples && i <= max_tries; ++i) {
        const double u = frac(radical_inverse(i, 2) + shift[0]);
        const double v = frac(radical_inverse(i, 3) + shift[1]);
        const double t = kTwoPi * v;
        const double s = cfg.sample_radius * std::sqrt(u);
        const Vec2 p = curve.center() + s * curve.radius_at(t) * Vec2(std::cos(t), std::sin(t));
        if (classify_point(curve, p, band) == Region::inside)
            points.emplace_back(p.x(), p.y(), 0.0);
    }
    return points;
}

RunReport cmd_solve(const ProblemConfig& cfg, const RunOptions& options)
{
    if (cfg.geometry.kind == GeometryKind::sphere) {
        RunReport report = solve_sphere(cfg, options, "solve");
        write_reports(cfg, options, report);
        return report;
    }

    const PlanarProblem prob = planar_problem(cfg, require_n(cfg));
    RunReport report = base_report(cfg, "solve", prob.mesh->size(), prob.band, prob.samples.size());
    std::optional<SsRun> ss;
    std::optional<BemRun> bem_run;
    if (cfg.runs_singular_source()) {
        ss = run_singular_source(cfg, prob, options);
        report.solvers[kSingularSource] = ss_report(*ss, prob);
    }
    if (cfg.runs_bem()) {
        bem_run = run_bem(cfg, prob, options);
        report.solvers[kClassicalBem] = bem_report(cfg, *bem_run, prob);
    }
    if (cfg.grid) {
        const FieldGrid grid = planar_grid(cfg, prob, ss ? &*ss : nullptr, bem_run ? &*bem_run : nullptr, options);
        write_field_csv(grid, output_path(options, cfg.outputs.field));
    }
    write_reports(cfg, options, report);
    return report;
}

RunReport cmd_compare(const ProblemConfig& cfg, const RunOptions& options)
{
    if (cfg.geometry.kind == GeometryKind::sphere) {
        RunReport report = solve_sphere(cfg, options, "compare");
        write_reports(cfg, options, report);
        return report;
    }
    if (cfg.solver != SolverSelection::both)
        throw ConfigError("config field 'solver': compare needs \"both\"");

    const PlanarProblem prob = planar_problem(cfg, require_n(cfg));
    RunReport report = base_report(cfg, "compare", prob.mesh->size(), prob.band, prob.samples.size());
    const SsRun ss = run_singular_source(cfg, prob, options);
    const BemRun bem_run = run_bem(cfg, prob, options);
    report.solvers[kSingularSource] = ss_report(ss, prob);
    report.solvers[kClassicalBem] = bem_report(cfg, bem_run, prob);
    report.comparison[std::string(kSingularSource) + "_vs_" + kClassicalBem] = stats(ss.values, bem_run.values);
    if (!prob.exact.empty()) {
        report.comparison[std::string(kSingularSource) + "_vs_" + kOracle] = stats(ss.values, prob.exact);
        report.comparison[std::string(kClassicalBem) + "_vs_" + kOracle] = stats(bem_run.values, prob.exact);
    }
    write_reports(cfg, options, report);
    return report;
}

ScanResult cmd_calibration_scan(const ProblemConfig& cfg, const RunOptions& options)
{
    if (cfg.geometry.kind != GeometryKind::circle)
        throw ConfigError("config field 'geometry': calibration-scan needs a circle (the prediction is defined there)");
    if (cfg.modes.empty())
        throw ConfigError("config field 'modes': calibration-scan needs at least one mode");
    ScanResult result;
    result.radius = cfg.geometry.radius;
    result.rows = calibration_scan(cfg.geometry.curve(), cfg.modes, require_n(cfg));

    std::string out = "k,C1,C2,rms_residual,predicted_C1\n";
    for (const ScanRow& row : result.rows) {
        out += std::to_string(row.k) + "," + format_number(row.c1) + "," + format_number(row.c2) + "," +
               format_number(row.rms_residual) + "," + format_number(result.radius * oracles::predicted_c1_disk(row.k)) +
               "\n";
    }
    write_text(output_path(options, cfg.outputs.scan), out);
    return result;
}

std::vector<ConvergenceRow> cmd_convergence(const ProblemConfig& cfg, const RunOptions& options)
{
    if (cfg.geometry.kind == GeometryKind::sphere)
        throw ConfigError("config field 'geometry': convergence sweeps planar meshes only");
    if (cfg.n_sweep.size() < 3)
        throw ConfigError("config field 'N_sweep': needs at least 3 entries");
    for (std::size_t i = 1; i < cfg.n_sweep.size(); ++i)
        if (cfg.n_sweep[i] <= cfg.n_sweep[i - 1])
            throw ConfigError("config field 'N_sweep': must be strictly ascending");

    std::vector<ConvergenceRow> rows;
    for (std::size_t n : cfg.n_sweep) {
        const PlanarProblem prob = planar_problem(cfg, n);
        ConvergenceRow row;
        row.n = n;
        if (cfg.runs_singular_source()) {
            const SsRun ss = run_singular_source(cfg, prob, options);
            row.ss_times = ss.times;
            if (!prob.exact.empty())
                row.err_ss = stats(ss.values, prob.exact).max;
        }
        if (cfg.runs_bem()) {
            const BemRun b = run_bem(cfg, prob, options);
            row.bem_times = b.times;
            if (!prob.exact.empty())
                row.err_bem = stats(b.values, prob.exact).max;
        }
        rows.push_back(row);
        if (options.verbose)
            std::fprintf(stderr, "convergence: N = %zu done\n", n);
    }

    const bool has_ss_err = rows.front().err_ss.has_value();
    const bool has_bem_err = rows.front().err_bem.has_value();
    const bool has_ss = rows.front().ss_times.has_value();
    const bool has_bem = rows.front().bem_times.has_value();
    std::string out = "N";
    if (has_ss_err)
        out += ",err_ss";
    if (has_bem_err)
        out += ",err_bem";
    if (has_ss)
        out += ",t_ss_assembly,t_ss_calibration,t_ss_evaluation";
    if (has_bem)
        out += ",t_bem_assembly,t_bem_solve,t_bem_evaluation";
    out += "\n";
    for (const ConvergenceRow& row : rows) {
        out += std::to_string(row.n);
        if (has_ss_err)
            out += "," + format_number(*row.err_ss);
        if (has_bem_err)
            out += "," + format_number(*row.err_bem);
        if (has_ss)
            out += "," + format_number(row.ss_times->assembly) + "," + format_number(row.ss_times->solve) + "," +
                   format_number(row.ss_times->evaluation);
        if (has_bem)
            out += "," + format_number(row.bem_times->assembly) + "," + format_number(row.bem_times->solve) + "," +
                   format_number(row.bem_times->evaluation);
        out += "\n";
    }
    write_text(output_path(options, cfg.outputs.convergence), out);
    return rows;
}

}  // namespace dirichlet::harness
