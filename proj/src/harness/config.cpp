#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dirichlet/harness.hpp"

namespace dirichlet::harness {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& message)
{
    throw ConfigError("config field '" + field + "': " + message);
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items())
        if (!keys.count(key))
            fail(where.empty() ? key : where + "." + key, "unknown field");
}

const json& require(const json& obj, const std::string& where, const char* key)
{
    if (!obj.contains(key))
        fail(where.empty() ? key : where + "." + key, "missing");
    return obj.at(key);
}

double number(const json& v, const std::string& field)
{
    if (!v.is_number())
        fail(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        fail(field, "must be finite");
    return d;
}

long long integer(const json& v, const std::string& field)
{
    if (!v.is_number_integer())
        fail(field, "expected an integer");
    return v.get<long long>();
}

std::string text(const json& v, const std::string& field)
{
    if (!v.is_string())
        fail(field, "expected a string");
    return v.get<std::string>();
}

const json& object(const json& v, const std::string& field)
{
    if (!v.is_object())
        fail(field, "expected an object");
    return v;
}

const json& array(const json& v, const std::string& field)
{
    if (!v.is_array())
        fail(field, "expected an array");
    return v;
}

std::size_t positive_size(const json& v, const std::string& field)
{
    const long long n = integer(v, field);
    if (n <= 0)
        fail(field, "must be positive");
    return std::size_t(n);
}

long long non_negative(const json& v, const std::string& field)
{
    const long long n = integer(v, field);
    if (n < 0)
        fail(field, "must not be negative");
    return n;
}

Vec2 point2(const json& v, const std::string& field)
{
    if (!v.is_array() || v.size() != 2)
        fail(field, "expected [x, y]");
    return {number(v[0], field + "[0]"), number(v[1], field + "[1]")};
}

std::vector<FourierTerm> fourier_terms(const json& v, const std::string& field)
{
    std::vector<FourierTerm> terms;
    array(v, field);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string f = field + "[" + std::to_string(i) + "]";
        const json& t = object(v[i], f);
        reject_unknown(t, f, {"k", "a", "b"});
        FourierTerm term;
        term.k = int(integer(require(t, f, "k"), f + ".k"));
        if (term.k < 0)
            fail(f + ".k", "must be non-negative");
        term.a = t.contains("a") ? number(t["a"], f + ".a") : 0.0;
        term.b = t.contains("b") ? number(t["b"], f + ".b") : 0.0;
        terms.push_back(term);
    }
    return terms;
}

GeometryConfig parse_geometry(const json& v)
{
    object(v, "geometry");
    GeometryConfig g;
    const std::string kind = text(require(v, "geometry", "kind"), "geometry.kind");
    if (kind == "circle") {
        reject_unknown(v, "geometry", {"kind", "radius", "center"});
        g.kind = GeometryKind::circle;
        if (v.contains("radius"))
            g.radius = number(v["radius"], "geometry.radius");
        if (!(g.radius > 0.0))
            fail("geometry.radius", "must be positive");
        if (v.contains("center"))
            g.center = point2(v["center"], "geometry.center");
    } else if (kind == "fourier") {
        reject_unknown(v, "geometry", {"kind", "a0", "terms", "center"});
        g.kind = GeometryKind::fourier_radial;
        g.a0 = number(require(v, "geometry", "a0"), "geometry.a0");
        if (v.contains("terms"))
            g.terms = fourier_terms(v["terms"], "geometry.terms");
        if (v.contains("center"))
            g.center = point2(v["center"], "geometry.center");
        try {
            (void)g.curve();
        } catch (const std::invalid_argument& e) {
            fail("geometry", e.what());
        }
    } else if (kind == "sphere") {
        reject_unknown(v, "geometry", {"kind", "n_lat", "n_lon"});
        g.kind = GeometryKind::sphere;
        if (v.contains("n_lat"))
            g.n_lat = int(integer(v["n_lat"], "geometry.n_lat"));
        if (v.contains("n_lon"))
            g.n_lon = int(integer(v["n_lon"], "geometry.n_lon"));
        if (g.n_lat < 4)
            fail("geometry.n_lat", "must be at least 4");
        if (g.n_lon < 8)
            fail("geometry.n_lon", "must be at least 8");
    } else {
        fail("geometry.kind", "unknown geometry '" + kind + "' (circle, fourier, sphere)");
    }
    return g;
}

void parse_boundary(const json& v, ProblemConfig& cfg)
{
    object(v, "boundary");
    const std::string kind = text(require(v, "boundary", "kind"), "boundary.kind");
    if (kind == "trig") {
        reject_unknown(v, "boundary", {"kind", "c0", "terms"});
        const double c0 = v.contains("c0") ? number(v["c0"], "boundary.c0") : 0.0;
        auto terms = v.contains("terms") ? fourier_terms(v["terms"], "boundary.terms") : std::vector<FourierTerm>{};
        cfg.boundary = BoundaryFunctionSpec::trig(c0, std::move(terms));
    } else if (kind == "preset") {
        reject_unknown(v, "boundary", {"kind", "name"});
        try {
            cfg.boundary = BoundaryFunctionSpec::preset(text(require(v, "boundary", "name"), "boundary.name"));
        } catch (const std::invalid_argument& e) {
            fail("boundary.name", e.what());
        }
    } else if (kind == "spherical_harmonic") {
        reject_unknown(v, "boundary", {"kind", "coefficients"});
        const json& list = array(require(v, "boundary", "coefficients"), "boundary.coefficients");
        SphericalHarmonicField field;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string f = "boundary.coefficients[" + std::to_string(i) + "]";
            const json& c = object(list[i], f);
            reject_unknown(c, f, {"l", "m", "c"});
            HarmonicCoefficient h;
            h.l = int(integer(require(c, f, "l"), f + ".l"));
            h.m = c.contains("m") ? int(integer(c["m"], f + ".m")) : 0;
            h.c = number(require(c, f, "c"), f + ".c");
            if (h.l < 0 || std::abs(h.m) > h.l)
                fail(f, "needs l >= 0 and |m| <= l");
            field.coefficients.push_back(h);
        }
        cfg.sphere_boundary = std::move(field);
    } else {
        fail("boundary.kind", "unknown boundary function '" + kind + "' (trig, preset, spherical_harmonic)");
    }
}

CalibrationConfig parse_calibration(const json& v)
{
    object(v, "calibration");
    CalibrationConfig c;
    const std::string mode = text(require(v, "calibration", "mode"), "calibration.mode");
    if (mode == "least_squares") {
        reject_unknown(v, "calibration", {"mode"});
        c.method = Calibration::Method::least_squares;
    } else if (mode == "two_point") {
        reject_unknown(v, "calibration", {"mode", "a", "b", "theta_a", "theta_b"});
        c.method = Calibration::Method::two_point;
        if (v.contains("a"))
            c.index_a = std::size_t(non_negative(v["a"], "calibration.a"));
        if (v.contains("b"))
            c.index_b = std::size_t(non_negative(v["b"], "calibration.b"));
        if (v.contains("theta_a"))
            c.theta_a = number(v["theta_a"], "calibration.theta_a");
        if (v.contains("theta_b"))
            c.theta_b = number(v["theta_b"], "calibration.theta_b");
        if (!(c.index_a || c.theta_a) || !(c.index_b || c.theta_b))
            fail("calibration", "two_point needs 'a'/'theta_a' and 'b'/'theta_b'");
        if ((c.index_a && c.theta_a) || (c.index_b && c.theta_b))
            fail("calibration", "give either an index or an angle for each point, not both");
        if (c.index_a && c.index_b && *c.index_a == *c.index_b)
            fail("calibration", "two-point calibration needs distinct collocation points");
    } else {
        fail("calibration.mode", "unknown calibration mode '" + mode + "' (least_squares, two_point)");
    }
    return c;
}

GridSpec parse_grid(const json& v, std::optional<double>& band)
{
    object(v, "grid");
    reject_unknown(v, "grid", {"x_min", "x_max", "y_min", "y_max", "step", "delta"});
    GridSpec g;
    g.x_min = number(require(v, "grid", "x_min"), "grid.x_min");
    g.x_max = number(require(v, "grid", "x_max"), "grid.x_max");
    g.y_min = number(require(v, "grid", "y_min"), "grid.y_min");
    g.y_max = number(require(v, "grid", "y_max"), "grid.y_max");
    g.step = number(require(v, "grid", "step"), "grid.step");
    if (!(g.step > 0.0))
        fail("grid.step", "must be positive");
    if (g.x_max < g.x_min || g.y_max < g.y_min)
        fail("grid", "bounds are inverted");
    if (g.size() > 4'000'000)
        fail("grid", "more than 4e6 points");
    if (v.contains("delta")) {
        band = number(v["delta"], "grid.delta");
        if (!(*band > 0.0))
            fail("grid.delta", "must be positive");
    }
    return g;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

ParametricCurve GeometryConfig::curve() const
{
    switch (kind) {
    case GeometryKind::circle: return make_circle(radius, center);
    case GeometryKind::fourier_radial: return make_fourier_curve(a0, terms, center);
    case GeometryKind::sphere: break;
    }
    throw std::logic_error("sphere geometry has no planar curve");
}

std::pair<std::size_t, std::size_t> CalibrationConfig::indices(std::size_t n) const
{
    const auto resolve = [n](std::optional<std::size_t> idx, std::optional<double> theta, const char* field) {
        std::size_t i = 0;
        if (idx) {
            i = *idx;
        } else {
            const double turns = *theta / (2.0 * std::numbers::pi);
            const long long k = std::llround(turns * double(n));
            i = std::size_t(((k % (long long)n) + (long long)n) % (long long)n);
        }
        if (i >= n)
            fail(field, "collocation index " + std::to_string(i) + " out of range for N = " + std::to_string(n));
        return i;
    };
    const std::size_t a = resolve(index_a, theta_a, "calibration.a");
    const std::size_t b = resolve(index_b, theta_b, "calibration.b");
    if (a == b)
        fail("calibration", "two-point calibration needs distinct collocation points");
    return {a, b};
}

bool ProblemConfig::has_oracle() const
{
    if (geometry.kind == GeometryKind::sphere)
        return sphere_boundary.has_value();
    return geometry.kind == GeometryKind::circle && boundary.has_value();
}

ProblemConfig parse_config(std::string_view input)
{
    json doc;
    try {
        doc = json::parse(input.begin(), input.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(input, e.byte == 0 ? 0 : e.byte - 1);
        throw ConfigError("config is not valid JSON at line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + e.what());
    }
    object(doc, "<root>");
    reject_unknown(doc, "",
                   {"schema", "geometry", "boundary", "N", "N_sweep", "solver", "density", "calibration", "grid",
                    "modes", "samples", "sample_radius", "timing_repeats", "seed", "outputs"});

    ProblemConfig cfg;
    cfg.schema = int(integer(require(doc, "", "schema"), "schema"));
    if (cfg.schema != kSchemaVersion)
        fail("schema", "unsupported schema version " + std::to_string(cfg.schema) + " (expected 1)");

    cfg.geometry = parse_geometry(require(doc, "", "geometry"));
    parse_boundary(require(doc, "", "boundary"), cfg);
    if (cfg.geometry.kind == GeometryKind::sphere && !cfg.sphere_boundary)
        fail("boundary", "sphere geometry needs spherical_harmonic boundary data");
    if (cfg.geometry.kind != GeometryKind::sphere && !cfg.boundary)
        fail("boundary", "planar geometry needs trig or preset boundary data");

    if (doc.contains("N"))
        cfg.n = positive_size(doc["N"], "N");
    if (doc.contains("N_sweep")) {
        const json& sweep = array(doc["N_sweep"], "N_sweep");
        for (std::size_t i = 0; i < sweep.size(); ++i)
            cfg.n_sweep.push_back(positive_size(sweep[i], "N_sweep[" + std::to_string(i) + "]"));
    }

    if (doc.contains("solver")) {
        const std::string s = text(doc["solver"], "solver");
        if (s == "singular_source")
            cfg.solver = SolverSelection::singular_source;
        else if (s == "classical_bem")
            cfg.solver = SolverSelection::classical_bem;
        else if (s == "both")
            cfg.solver = SolverSelection::both;
        else
            fail("solver", "unknown solver '" + s + "' (singular_source, classical_bem, both)");
    }
    if (cfg.geometry.kind == GeometryKind::sphere && cfg.runs_bem())
        fail("solver", "classical_bem is implemented for planar curves only");

    if (doc.contains("density")) {
        const std::string d = text(doc["density"], "density");
        if (d == "spectral")
            cfg.route = DensityRoute::spectral;
        else if (d == "finite_difference")
            cfg.route = DensityRoute::finite_difference;
        else
            fail("density", "unknown density route '" + d + "' (spectral, finite_difference)");
    }

    if (doc.contains("calibration"))
        cfg.calibration = parse_calibration(doc["calibration"]);
    if (cfg.geometry.kind == GeometryKind::sphere && cfg.calibration.method == Calibration::Method::two_point)
        fail("calibration", "sphere runs use least-squares calibration");

    if (doc.contains("grid"))
        cfg.grid = parse_grid(doc["grid"], cfg.band);

    if (doc.contains("modes")) {
        const json& modes = array(doc["modes"], "modes");
        for (std::size_t i = 0; i < modes.size(); ++i) {
            const long long k = integer(modes[i], "modes[" + std::to_string(i) + "]");
            if (k < 1)
                fail("modes[" + std::to_string(i) + "]", "modes must be >= 1");
            cfg.modes.push_back(int(k));
        }
    }
    if (doc.contains("samples"))
        cfg.samples = positive_size(doc["samples"], "samples");
    if (doc.contains("sample_radius")) {
        cfg.sample_radius = number(doc["sample_radius"], "sample_radius");
        if (!(cfg.sample_radius > 0.0 && cfg.sample_radius < 1.0))
            fail("sample_radius", "must lie in (0, 1)");
    }
    if (doc.contains("timing_repeats")) {
        cfg.timing_repeats = int(integer(doc["timing_repeats"], "timing_repeats"));
        if (cfg.timing_repeats < 1)
            fail("timing_repeats", "must be at least 1");
    }
    if (doc.contains("seed")) {
        const long long seed = integer(doc["seed"], "seed");
        if (seed < 0)
            fail("seed", "must be non-negative");
        cfg.seed = std::uint64_t(seed);
    }
    if (doc.contains("outputs")) {
        const json& out = object(doc["outputs"], "outputs");
        reject_unknown(out, "outputs", {"field", "report", "timings", "scan", "convergence"});
        const auto name = [&](const char* key, std::string& dst) {
            if (out.contains(key))
                dst = text(out[key], std::string("outputs.") + key);
        };
        name("field", cfg.outputs.field);
        name("report", cfg.outputs.report);
        name("timings", cfg.outputs.timings);
        name("scan", cfg.outputs.scan);
        name("convergence", cfg.outputs.convergence);
    }
    return cfg;
}

ProblemConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace dirichlet::harness
