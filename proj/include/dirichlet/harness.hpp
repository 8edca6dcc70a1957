#ifndef DIRICHLET_HARNESS_HPP
#define DIRICHLET_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dirichlet/boundary_calculus.hpp"
#include "dirichlet/field_grid.hpp"
#include "dirichlet/geometry.hpp"
#include "dirichlet/singular_source.hpp"

/*
 * Experiment driver behind the `dirichlet` CLI.
 *
 * Config (JSON, "schema": 1):
 *
 *   {
 *     "schema": 1,
 *     "geometry": {"kind": "circle", "radius": 1.0, "center": [0, 0]}
 *               | {"kind": "fourier", "a0": 1.0, "terms": [{"k": 3, "a": 0.2, "b": 0.0}], "center": [0, 0]}
 *               | {"kind": "sphere", "n_lat": 40, "n_lon": 80},
 *     "boundary": {"kind": "trig", "c0": 0.0, "terms": [{"k": 2, "a": 0.0, "b": 1.0}]}
 *               | {"kind": "preset", "name": "sin2theta"}
 *               | {"kind": "spherical_harmonic", "coefficients": [{"l": 2, "m": 0, "c": 1.0}]},
 *     "N": 512,                       // or "N_sweep": [128, 256, 512, 1024]
 *     "solver": "singular_source" | "classical_bem" | "both",
 *     "density": "spectral" | "finite_difference",
 *     "calibration": {"mode": "least_squares"}
 *                  | {"mode": "two_point", "a": 64, "b": 192}          // collocation indices
 *                  | {"mode": "two_point", "theta_a": 0.785, "theta_b": 2.356},
 *     "grid": {"x_min": -1.5, "x_max": 1.5, "y_min": -1.5, "y_max": 1.5, "step": 0.05, "delta": 0.03},
 *     "modes": [1, 2, 4],
 *     "samples": 512,                 // interior comparison points
 *     "sample_radius": 0.8,           // fraction of the boundary radius
 *     "timing_repeats": 3,
 *     "seed": 12345,
 *     "outputs": {"field": "field.csv", "report": "report.json", "timings": "timings.json",
 *                 "scan": "scan.csv", "convergence": "convergence.csv"}
 *   }
 *
 * "schema", "geometry" and "boundary" are required everywhere. Missing "delta" means
 * 2 max_j dsigma_j (2-D) or 2 pi / n_lat (sphere).
 *
 * Output columns (frozen, schema 1):
 *   field.csv        x,y[,z],region,psi_ss,psi_bem,psi_exact,abs_err_ss,abs_err_bem
 *   scan.csv         k,C1,C2,rms_residual,predicted_C1
 *   convergence.csv  N,err_ss,err_bem,t_ss_assembly,t_ss_calibration,t_ss_evaluation,
 *                    t_bem_assembly,t_bem_solve,t_bem_evaluation
 * Columns without data for a run are omitted; empty cells mark values that do
 * not apply to a row. Numbers carry 17 significant digits.
 *
 * report.json is deterministic for a fixed config; wall times go to timings.json.
 */

namespace dirichlet::harness {

inline constexpr int kSchemaVersion = 1;

/// Malformed or inconsistent configuration. Exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class GeometryKind { circle, fourier_radial, sphere };
enum class SolverSelection { singular_source, classical_bem, both };

struct GeometryConfig {
    GeometryKind kind = GeometryKind::circle;
    double radius = 1.0;
    Vec2 center = Vec2::Zero();
    double a0 = 1.0;
    std::vector<FourierTerm> terms;
    int n_lat = 40;
    int n_lon = 80;

    int dimension() const { return kind == GeometryKind::sphere ? 3 : 2; }
    ParametricCurve curve() const;
};

struct OutputNames {
    std::string field = "field.csv";
    std::string report = "report.json";
    std::string timings = "timings.json";
    std::string scan = "scan.csv";
    std::string convergence = "convergence.csv";
};

struct CalibrationConfig {
    Calibration::Method method = Calibration::Method::least_squares;
    std::optional<std::size_t> index_a;
    std::optional<std::size_t> index_b;
    std::optional<double> theta_a;
    std::optional<double> theta_b;

    /// Collocation indices for an N-node mesh.
    std::pair<std::size_t, std::size_t> indices(std::size_t n) const;
};

struct ProblemConfig {
    int schema = kSchemaVersion;
    GeometryConfig geometry;
    std::optional<BoundaryFunctionSpec> boundary;
    std::optional<SphericalHarmonicField> sphere_boundary;
    std::optional<std::size_t> n;
    std::vector<std::size_t> n_sweep;
    SolverSelection solver = SolverSelection::singular_source;
    DensityRoute route = DensityRoute::spectral;
    CalibrationConfig calibration;
    std::optional<GridSpec> grid;
    std::optional<double> band;
    std::vector<int> modes;
    std::size_t samples = 512;
    double sample_radius = 0.8;
    int timing_repeats = 3;
    std::uint64_t seed = 12345;
    OutputNames outputs;

    bool runs_singular_source() const { return solver != SolverSelection::classical_bem; }
    bool runs_bem() const { return solver != SolverSelection::singular_source; }
    /// An exact solution exists (circle with trig data, or sphere).
    bool has_oracle() const;
};

/// Throws ConfigError naming the JSON line/column or the offending field.
ProblemConfig parse_config(std::string_view text);
ProblemConfig load_config(const std::filesystem::path& path);

struct RunOptions {
    std::filesystem::path out_dir = ".";
    unsigned threads = 1;
    bool verbose = false;
};

struct ErrorStats {
    double max = 0.0;
    double rms = 0.0;
};

struct PhaseTimes {
    double assembly = 0.0;
    double solve = 0.0;
    double evaluation = 0.0;
};

struct SolverReport {
    std::optional<double> c1;
    std::optional<double> c2;
    std::optional<std::string> calibration_method;
    std::optional<double> calibration_rms_residual;
    std::optional<double> calibration_relative_rms_residual;
    std::optional<ErrorStats> interior_error;
    std::optional<double> neumann_max_error;
    PhaseTimes times;
};

struct RunReport {
    std::string command;
    std::string geometry;
    int dimension = 2;
    std::size_t n = 0;
    double band = 0.0;
    std::size_t interior_samples = 0;
    bool oracle = false;
    std::map<std::string, SolverReport> solvers;
    std::map<std::string, ErrorStats> comparison;
};

/// Serialises everything except wall times.
std::string report_json(const RunReport& report);
std::string timings_json(const RunReport& report);

RunReport cmd_solve(const ProblemConfig& config, const RunOptions& options);
RunReport cmd_compare(const ProblemConfig& config, const RunOptions& options);

struct ScanResult {
    double radius = 1.0;
    std::vector<ScanRow> rows;
};

ScanResult cmd_calibration_scan(const ProblemConfig& config, const RunOptions& options);

struct ConvergenceRow {
    std::size_t n = 0;
    std::optional<double> err_ss;
    std::optional<double> err_bem;
    std::optional<PhaseTimes> ss_times;
    std::optional<PhaseTimes> bem_times;
};

std::vector<ConvergenceRow> cmd_convergence(const ProblemConfig& config, const RunOptions& options);

/// Fixed-seed low-discrepancy interior points: Halton sequence with a seeded
/// Cranley-Patterson shift, mapped into the shape-scaled band and filtered by
/// classify_point. Sphere points come back with z set.
std::vector<Vec3> interior_sample_points(const ProblemConfig& config, double band);

// CSV helpers

/// %.17g formatting.
std::string format_number(double v);

void write_field_csv(const FieldGrid& grid, const std::filesystem::path& path);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by name; throws std::out_of_range if missing.
    std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

/// CLI entry point; returns the process exit code (0 ok, 1 config error, 2 solver error).
int run_cli(int argc, char** argv);

}  // namespace dirichlet::harness

#endif
