#include "dirichlet/singular_source.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "dirichlet/errors.hpp"
#include "dirichlet/parallel.hpp"

namespace dirichlet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;

void fill_residuals(Calibration& cal, std::span<const double> s, std::span<const double> f)
{
    double misfit = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double r = cal.c1 * s[i] + cal.c2 - f[i];
        misfit += r * r;
        norm += f[i] * f[i];
    }
    const double m = double(s.size());
    cal.rms_residual = std::sqrt(misfit / m);
    const double f_rms = std::sqrt(norm / m);
    cal.relative_rms_residual = f_rms > 0.0 ? cal.rms_residual / f_rms : cal.rms_residual;
}

std::vector<double> sums_at(const BoundaryField& density, const std::vector<Vec2>& points,
                            const KernelConvention& conv)
{
    std::vector<double> s(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        s[i] = single_layer_sum(density, points[i], conv);
    return s;
}

void check_collocation(const BoundaryField& density, std::span<const double> f_colloc)
{
    if (f_colloc.size() != density.mesh->size())
        throw std::invalid_argument("boundary values must be given at every collocation point");
}

}  // namespace

CollocationPoints collocation_points(const BoundaryMesh& mesh)
{
    CollocationPoints c;
    const std::size_t n = mesh.size();
    c.points.resize(n);
    c.parameters.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        c.parameters[i] = kTwoPi * double(i) / double(n);
        c.points[i] = mesh.source_curve.position(c.parameters[i]);
    }
    return c;
}

double single_layer_sum(const BoundaryField& density, const Vec2& r, const KernelConvention& conv)
{
    if (conv.dimension != 2)
        throw std::invalid_argument("planar single layer needs a 2-D kernel convention");
    const BoundaryMesh& mesh = *density.mesh;
    const double scale = conv.factor() / (2.0 * kTwoPi);
    double sum = 0.0;
    for (std::size_t j = 0; j < mesh.size(); ++j) {
        const double d2 = (mesh.nodes[j] - r).squaredNorm();
        if (d2 <= kCoincidenceDistance * kCoincidenceDistance)
            throw std::domain_error("single-layer sum evaluated on a mesh node");
        sum += density.values[j] * (scale * std::log(d2)) * mesh.weights[j];
    }
    return sum;
}

const char* method_name(Calibration::Method m)
{
    return m == Calibration::Method::two_point ? "two_point" : "least_squares";
}

Calibration fit_two_point(std::span<const double> s, std::span<const double> f, std::size_t a, std::size_t b)
{
    if (s.size() != f.size())
        throw std::invalid_argument("single-layer values and boundary values differ in length");
    if (a == b)
        throw std::invalid_argument("two-point calibration needs distinct collocation points");
    if (a >= s.size() || b >= s.size())
        throw std::invalid_argument("collocation index out of range");
    const double sa = s[a];
    const double sb = s[b];
    const double scale = std::max({std::abs(sa), std::abs(sb), 1.0});
    if (std::abs(sa - sb) < 1e-10 * scale)
        throw DegenerateCalibration("two-point calibration is singular: S(r_a) = S(r_b) = " + std::to_string(sa));
    Calibration cal;
    cal.method = Calibration::Method::two_point;
    cal.c1 = (f[a] - f[b]) / (sa - sb);
    cal.c2 = f[a] - cal.c1 * sa;
    fill_residuals(cal, s, f);
    return cal;
}

Calibration fit_least_squares(std::span<const double> s, std::span<const double> f)
{
    if (s.size() != f.size())
        throw std::invalid_argument("single-layer values and boundary values differ in length");
    const std::size_t m = s.size();
    if (m < 2)
        throw std::invalid_argument("least-squares calibration needs at least two points");

    double lo = s[0], hi = s[0], peak = 0.0;
    for (double v : s) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        peak = std::max(peak, std::abs(v));
    }
    if (hi - lo <= 1e-10 * std::max(peak, 1.0))
        throw DegenerateCalibration("least-squares calibration is rank deficient: S is constant over the "
                                    "collocation points");

    Eigen::MatrixXd design(m, 2);
    Eigen::VectorXd target(m);
    for (std::size_t i = 0; i < m; ++i) {
        design(Eigen::Index(i), 0) = s[i];
        design(Eigen::Index(i), 1) = 1.0;
        target(Eigen::Index(i)) = f[i];
    }
    const Eigen::Vector2d coef = design.householderQr().solve(target);
    Calibration cal;
    cal.method = Calibration::Method::least_squares;
    cal.c1 = coef(0);
    cal.c2 = coef(1);
    fill_residuals(cal, s, f);
    return cal;
}

Calibration calibrate_two_point(const BoundaryField& density, std::span<const double> f_colloc, std::size_t a,
                                std::size_t b, const KernelConvention& conv)
{
    check_collocation(density, f_colloc);
    const auto s = sums_at(density, collocation_points(*density.mesh).points, conv);
    return fit_two_point(s, f_colloc, a, b);
}

Calibration calibrate_least_squares(const BoundaryField& density, std::span<const double> f_colloc,
                                    const KernelConvention& conv)
{
    check_collocation(density, f_colloc);
    const auto s = sums_at(density, collocation_points(*density.mesh).points, conv);
    return fit_least_squares(s, f_colloc);
}

double evaluate(const SingularSourceSolution& sol, const Vec2& r)
{
    return sol.c1 * single_layer_sum(sol.density, r, sol.convention) + sol.c2;
}

BoundaryField density_for(const BoundaryFunctionSpec& f, const MeshPtr& mesh, DensityRoute route)
{
    if (route == DensityRoute::spectral)
        return second_tangential_derivative_spectral(f, mesh);
    return second_tangential_derivative_fd(f.sample(mesh));
}

SingularSourceSolution solve_singular_source(const BoundaryFunctionSpec& f, const MeshPtr& mesh,
                                             const SingularSourceOptions& options)
{
    SingularSourceSolution sol;
    sol.convention = options.convention;
    sol.density = density_for(f, mesh, options.route);
    const auto f_colloc = f.sample(collocation_points(*mesh).parameters);
    if (options.calibration == Calibration::Method::two_point)
        sol.calibration = calibrate_two_point(sol.density, f_colloc, options.point_a, options.point_b, sol.convention);
    else
        sol.calibration = calibrate_least_squares(sol.density, f_colloc, sol.convention);
    sol.c1 = sol.calibration.c1;
    sol.c2 = sol.calibration.c2;
    return sol;
}

FieldGrid evaluate_grid(const SingularSourceSolution& sol, const GridSpec& grid, double band, unsigned threads)
{
    grid.validate();
    FieldGrid out;
    out.spec = grid;
    out.band = band;
    out.rows.resize(grid.size());
    const std::size_t nx = grid.nx();
    parallel_for(out.rows.size(), threads, [&](std::size_t idx) {
        GridRow& row = out.rows[idx];
        row.x = grid.x(idx % nx);
        row.y = grid.y(idx / nx);
        const Vec2 p(row.x, row.y);
        row.region = classify_point(sol.mesh().source_curve, p, band);
        try {
            row.psi_ss = evaluate(sol, p);
        } catch (const std::domain_error&) {
            // Grid point landed on a quadrature node; leave the value absent.
        }
    });
    return out;
}

std::vector<ScanRow> calibration_scan(const ParametricCurve& curve, std::span<const int> modes, std::size_t n)
{
    const MeshPtr mesh = mesh_curve(curve, n);
    std::vector<ScanRow> rows;
    rows.reserve(modes.size());
    for (int k : modes) {
        if (k < 1)
            throw std::invalid_argument("calibration scan modes must be >= 1");
        const auto f = BoundaryFunctionSpec::trig(0.0, {{k, 0.0, 1.0}});
        const SingularSourceSolution sol = solve_singular_source(f, mesh);
        rows.push_back({k, sol.c1, sol.c2, sol.calibration.rms_residual});
    }
    return rows;
}

double single_layer_sum(const SphereField& density, const Vec3& r, const KernelConvention& conv)
{
    if (conv.dimension != 3)
        throw std::invalid_argument("sphere single layer needs a 3-D kernel convention");
    const SphereQuadrature& quad = *density.quadrature;
    const double scale = -conv.factor() / kFourPi;
    double sum = 0.0;
    for (std::size_t j = 0; j < quad.size(); ++j) {
        const double dist = (quad.nodes[j] - r).norm();
        if (dist <= kCoincidenceDistance)
            throw std::domain_error("single-layer sum evaluated on a quadrature node");
        sum += density.values[j] * (scale / dist) * quad.weights[j];
    }
    return sum;
}

double single_layer_on_sphere(const SphereField& density, double density_at_r0, const Vec3& r0,
                              const KernelConvention& conv)
{
    if (conv.dimension != 3)
        throw std::invalid_argument("sphere single layer needs a 3-D kernel convention");
    const SphereQuadrature& quad = *density.quadrature;
    const double scale = -conv.factor() / kFourPi;
    double sum = 0.0;
    for (std::size_t j = 0; j < quad.size(); ++j) {
        const double dist = (quad.nodes[j] - r0).norm();
        if (dist <= kCoincidenceDistance)
            continue;
        sum += (density.values[j] - density_at_r0) * (scale / dist) * quad.weights[j];
    }
    // int G(r0, r') dsigma' over the unit sphere for |r0| = 1.
    return sum - conv.factor() * density_at_r0;
}

std::vector<Vec3> sphere_collocation_points(const SphereQuadrature& quad)
{
    std::vector<Vec3> points;
    const auto& z = quad.cos_polar;
    points.reserve((z.size() - 1) * std::size_t(quad.n_lon));
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        const double zc = 0.5 * (z[i] + z[i + 1]);
        const double s = std::sqrt(1.0 - zc * zc);
        for (int j = 0; j < quad.n_lon; ++j) {
            const double phi = kTwoPi * j / quad.n_lon;
            points.emplace_back(s * std::cos(phi), s * std::sin(phi), zc);
        }
    }
    return points;
}

Calibration calibrate_least_squares_sphere(const SphereField& density, const SphericalHarmonicField& f,
                                           const KernelConvention& conv)
{
    const auto points = sphere_collocation_points(*density.quadrature);
    std::vector<double> s(points.size());
    std::vector<double> target(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        s[i] = single_layer_on_sphere(density, f.surface_laplacian(points[i]), points[i], conv);
        target[i] = f.value(points[i]);
    }
    return fit_least_squares(s, target);
}

SphereSingularSourceSolution solve_singular_source_sphere(const SphericalHarmonicField& f,
                                                          const SphereQuadraturePtr& quad,
                                                          const KernelConvention& conv)
{
    SphereSingularSourceSolution sol;
    sol.convention = conv;
    sol.density = tangential_laplacian_sphere(f, quad);
    sol.calibration = calibrate_least_squares_sphere(sol.density, f, conv);
    sol.c1 = sol.calibration.c1;
    sol.c2 = sol.calibration.c2;
    return sol;
}

double evaluate(const SphereSingularSourceSolution& sol, const Vec3& r)
{
    return sol.c1 * single_layer_sum(sol.density, r, sol.convention) + sol.c2;
}

FieldGrid evaluate_grid(const SphereSingularSourceSolution& sol, const GridSpec& grid, double band, unsigned threads)
{
    grid.validate();
    FieldGrid out;
    out.spec = grid;
    out.band = band;
    out.rows.resize(grid.size());
    const std::size_t nx = grid.nx();
    parallel_for(out.rows.size(), threads, [&](std::size_t idx) {
        GridRow& row = out.rows[idx];
        row.x = grid.x(idx % nx);
        row.y = 0.0;
        row.z = grid.y(idx / nx);
        const Vec3 p(row.x, row.y, *row.z);
        row.region = classify_point_sphere(p, band);
        try {
            row.psi_ss = evaluate(sol, p);
        } catch (const std::domain_error&) {
        }
    });
    return out;
}

}  // namespace dirichlet
