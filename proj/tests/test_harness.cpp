#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <doctest.h>

#include "dirichlet/errors.hpp"
#include "dirichlet/harness.hpp"

using namespace dirichlet;
using namespace dirichlet::harness;
namespace fs = std::filesystem;

namespace {

const char* kDiskConfig = R"({
  "schema": 1,
  "geometry": {"kind": "circle", "radius": 1.0, "center": [0.0, 0.0]},
  "boundary": {"kind": "preset", "name": "sin2theta"},
  "N": 512,
  "solver": "both",
  "grid": {"x_min": -1.5, "x_max": 1.5, "y_min": -1.5, "y_max": 1.5, "step": 0.1},
  "samples": 128
})";

struct TempDir {
    fs::path path;
    TempDir()
    {
        std::random_device rd;
        path = fs::temp_directory_path() / ("dirichlet_test_" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path write(const std::string& name, const std::string& text) const
    {
        std::ofstream(path / name) << text;
        return path / name;
    }
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string config_error(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

int cli(std::vector<std::string> args)
{
    std::vector<char*> argv;
    static std::string prog = "dirichlet";
    argv.push_back(prog.data());
    for (auto& a : args)
        argv.push_back(a.data());
    return run_cli(int(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("parse a complete config")
{
    const auto cfg = parse_config(kDiskConfig);
    CHECK(cfg.geometry.kind == GeometryKind::circle);
    CHECK(cfg.n == std::size_t(512));
    CHECK(cfg.solver == SolverSelection::both);
    CHECK(cfg.runs_bem());
    CHECK(cfg.runs_singular_source());
    CHECK(cfg.has_oracle());
    REQUIRE(cfg.grid);
    CHECK(cfg.grid->size() == 31 * 31);
    CHECK(cfg.calibration.method == Calibration::Method::least_squares);
}

TEST_CASE("config errors name the field")
{
    const std::string base = R"("schema": 1, "geometry": {"kind": "circle"}, "boundary": {"kind": "preset", "name": "sin2theta"})";
    CHECK(config_error("{" + base + R"(, "solver": "multigrid"})").find("'solver'") != std::string::npos);
    CHECK(config_error("{" + base + R"(, "N": -4})").find("'N'") != std::string::npos);
    CHECK(config_error("{" + base + R"(, "bogus": 1})").find("'bogus'") != std::string::npos);
    CHECK(config_error("{" + base + R"(, "grid": {"step": 0}})").find("grid") != std::string::npos);
    CHECK(config_error(R"({"schema": 2, "geometry": {"kind": "circle"}, "boundary": {"kind": "preset", "name": "unit"}})")
              .find("'schema'") != std::string::npos);
    CHECK(config_error(R"({"schema": 1, "geometry": {"kind": "circle", "radius": -1}, "boundary": {"kind": "preset", "name": "unit"}})")
              .find("radius") != std::string::npos);
    CHECK(config_error(R"({"schema": 1, "geometry": {"kind": "sphere"}, "boundary": {"kind": "spherical_harmonic", "coefficients": [{"l": 2, "m": 0, "c": 1}]}, "solver": "classical_bem"})")
              .find("'solver'") != std::string::npos);
    CHECK(config_error("{" + base + R"(, "calibration": {"mode": "two_point", "a": 3, "b": 3}})")
              .find("calibration") != std::string::npos);

    const std::string broken = "{\n  \"schema\": 1,\n  \"geometry\": {\n}";
    const std::string msg = config_error(broken);
    CHECK(msg.find("line") != std::string::npos);
}

TEST_CASE("command-level config errors")
{
    TempDir tmp;
    RunOptions opts{tmp.path, 1, false};
    const std::string base = R"("schema": 1, "geometry": {"kind": "circle"}, "boundary": {"kind": "preset", "name": "sin2theta"})";
    CHECK_THROWS_AS(cmd_calibration_scan(parse_config("{" + base + R"(, "N": 64, "modes": []})"), opts), ConfigError);
    CHECK_THROWS_AS(cmd_convergence(parse_config("{" + base + R"(, "N_sweep": [128]})"), opts), ConfigError);
    CHECK_THROWS_AS(cmd_convergence(parse_config("{" + base + R"(, "N_sweep": [128, 64, 256]})"), opts), ConfigError);
    CHECK_THROWS_AS(cmd_compare(parse_config("{" + base + R"(, "N": 64})"), opts), ConfigError);
}

TEST_CASE("constant data surfaces a degenerate calibration with remedy text")
{
    TempDir tmp;
    const auto cfg = parse_config(R"({"schema": 1, "geometry": {"kind": "circle"}, "boundary": {"kind": "preset", "name": "unit"}, "N": 64})");
    try {
        cmd_solve(cfg, {tmp.path, 1, false});
        FAIL("expected a degenerate calibration");
    } catch (const DegenerateCalibration& e) {
        CHECK(std::string(e.what()).find("least-squares") != std::string::npos);
    }
}

TEST_CASE("solve writes a deterministic report and a field dump")
{
    TempDir a, b;
    const auto cfg = parse_config(kDiskConfig);
    const auto report = cmd_solve(cfg, {a.path, 1, false});
    cmd_solve(cfg, {b.path, 3, false});
    CHECK(slurp(a.path / "report.json") == slurp(b.path / "report.json"));
    CHECK(slurp(a.path / "field.csv") == slurp(b.path / "field.csv"));
    CHECK(fs::exists(a.path / "timings.json"));

    REQUIRE(report.solvers.count("singular_source"));
    REQUIRE(report.solvers.count("classical_bem"));
    const auto& ss = report.solvers.at("singular_source");
    CHECK(*ss.c1 == doctest::Approx(1.0).epsilon(0.02));
    CHECK(ss.interior_error->max <= 5e-3);
    CHECK(report.solvers.at("classical_bem").interior_error->max <= 5e-3);

    const auto table = read_csv(a.path / "field.csv");
    CHECK(table.header == std::vector<std::string>{"x", "y", "region", "psi_ss", "psi_bem", "psi_exact", "abs_err_ss",
                                                   "abs_err_bem"});
    CHECK(table.rows.size() == cfg.grid->size());
    const auto region = table.column("region");
    const auto err = table.column("abs_err_ss");
    const auto psi = table.column("psi_ss");
    std::size_t outside = 0;
    for (const auto& row : table.rows) {
        REQUIRE(row.size() == table.header.size());
        CHECK(std::isfinite(std::stod(row[psi])));
        if (row[region] == "inside") {
            CHECK(!row[err].empty());
        } else {
            CHECK(row[err].empty());
            outside += row[region] == "outside";
        }
    }
    CHECK(outside > 0);
}

TEST_CASE("CSV values round-trip at 17 significant digits")
{
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 2000; ++i) {
        const double v = u(rng) * std::pow(10.0, int(u(rng)) % 200);
        CHECK(std::stod(format_number(v)) == v);
    }

    TempDir tmp;
    FieldGrid grid;
    grid.spec = GridSpec{0.0, 0.2, 0.0, 0.1, 0.1};
    for (int i = 0; i < 6; ++i) {
        GridRow r;
        r.x = 0.1 * (i % 3);
        r.y = 0.1 * (i / 3);
        r.region = i % 2 ? Region::inside : Region::outside;
        r.psi_ss = u(rng) / 3.0;
        if (r.region == Region::inside) {
            r.psi_exact = u(rng) / 7.0;
            r.abs_err_ss = std::abs(*r.psi_ss - *r.psi_exact);
        }
        grid.rows.push_back(r);
    }
    write_field_csv(grid, tmp.path / "f.csv");
    const auto table = read_csv(tmp.path / "f.csv");
    CHECK(table.header == std::vector<std::string>{"x", "y", "region", "psi_ss", "psi_exact", "abs_err_ss"});
    for (std::size_t i = 0; i < grid.rows.size(); ++i) {
        const auto& r = grid.rows[i];
        CHECK(std::stod(table.rows[i][0]) == r.x);
        CHECK(std::stod(table.rows[i][3]) == *r.psi_ss);
        if (r.psi_exact)
            CHECK(std::stod(table.rows[i][4]) == *r.psi_exact);
        else
            CHECK(table.rows[i][4].empty());
    }
}

TEST_CASE("calibration scan and convergence outputs")
{
    TempDir tmp;
    RunOptions opts{tmp.path, 1, false};
    const auto scan = cmd_calibration_scan(
        parse_config(R"({"schema": 1, "geometry": {"kind": "circle"}, "boundary": {"kind": "preset", "name": "sin2theta"}, "N": 1024, "modes": [2]})"),
        opts);
    REQUIRE(scan.rows.size() == 1);
    CHECK(scan.rows[0].c1 == doctest::Approx(1.0).epsilon(0.01));
    const auto scan_csv = read_csv(tmp.path / "scan.csv");
    CHECK(scan_csv.header == std::vector<std::string>{"k", "C1", "C2", "rms_residual", "predicted_C1"});
    CHECK(std::stod(scan_csv.rows[0][1]) == scan.rows[0].c1);
    CHECK(std::stod(scan_csv.rows[0][4]) == 1.0);

    const auto rows = cmd_convergence(
        parse_config(R"({"schema": 1, "geometry": {"kind": "circle"}, "boundary": {"kind": "preset", "name": "sin2theta"}, "N_sweep": [128, 256, 512], "samples": 128, "timing_repeats": 1})"),
        opts);
    REQUIRE(rows.size() == 3);
    CHECK(*rows[1].err_ss <= *rows[0].err_ss);
    CHECK(*rows[2].err_ss <= *rows[1].err_ss);
    const auto conv = read_csv(tmp.path / "convergence.csv");
    CHECK(conv.header == std::vector<std::string>{"N", "err_ss", "t_ss_assembly", "t_ss_calibration", "t_ss_evaluation"});
    CHECK(std::stod(conv.rows[2][1]) == *rows[2].err_ss);
}

TEST_CASE("compare on a non-circular curve reports solver deltas only")
{
    TempDir tmp;
    const auto cfg = parse_config(R"({"schema": 1, "geometry": {"kind": "fourier", "a0": 1.0, "terms": [{"k": 3, "a": 0.2, "b": 0.0}]},
        "boundary": {"kind": "preset", "name": "sin2theta"}, "N": 256, "solver": "both", "samples": 64})");
    CHECK_FALSE(cfg.has_oracle());
    const auto report = cmd_compare(cfg, {tmp.path, 1, false});
    CHECK(report.comparison.size() == 1);
    CHECK(report.comparison.count("singular_source_vs_classical_bem") == 1);
    CHECK(!report.solvers.at("singular_source").interior_error);
}

TEST_CASE("interior samples are reproducible and inside")
{
    auto cfg = parse_config(kDiskConfig);
    const auto a = interior_sample_points(cfg, 0.05);
    const auto b = interior_sample_points(cfg, 0.05);
    REQUIRE(a.size() == cfg.samples);
    CHECK(a == b);
    for (const Vec3& p : a)
        CHECK(p.head<2>().norm() <= 0.8 + 1e-12);
    cfg.seed = 99;
    CHECK(interior_sample_points(cfg, 0.05) != a);
}

TEST_CASE("exit codes")
{
    TempDir tmp;
    const auto good = tmp.write("good.json", kDiskConfig);
    const auto bad_solver = tmp.write(
        "bad.json", R"({"schema": 1, "geometry": {"kind": "circle"}, "boundary": {"kind": "preset", "name": "sin2theta"}, "solver": "x"})");
    const auto constant = tmp.write(
        "const.json", R"({"schema": 1, "geometry": {"kind": "circle"}, "boundary": {"kind": "preset", "name": "unit"}, "N": 64})");
    const auto garbage = tmp.write("garbage.json", "{not json");
    const std::string out = (tmp.path / "out").string();

    CHECK(cli({"solve", "--config", good.string(), "--out-dir", out}) == 0);
    CHECK(fs::exists(tmp.path / "out" / "report.json"));
    CHECK(cli({"compare", "--config", good.string(), "--out-dir", out, "--threads", "0"}) == 0);
    CHECK(cli({"solve", "--config", bad_solver.string(), "--out-dir", out}) == 1);
    CHECK(cli({"solve", "--config", garbage.string(), "--out-dir", out}) == 1);
    CHECK(cli({"solve", "--config", (tmp.path / "missing.json").string()}) == 1);
    CHECK(cli({"solve"}) == 1);
    CHECK(cli({"frobnicate"}) == 1);
    CHECK(cli({"solve", "--config", constant.string(), "--out-dir", out}) == 2);
    CHECK(cli({"--help"}) == 0);
}
