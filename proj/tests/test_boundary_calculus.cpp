#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>
#include <doctest.h>

#include "dirichlet/boundary_calculus.hpp"
#include "dirichlet/geometry.hpp"

using namespace dirichlet;
using std::numbers::pi;

namespace {

MeshPtr unit_mesh(std::size_t n) { return mesh_curve(make_circle(1.0), n); }

MeshPtr lobed_mesh(std::size_t n) { return mesh_curve(make_fourier_curve(1.0, {{3, 0.2, 0.0}}), n); }

// d2f/ds2 by nested central differences: g = f_t / |gamma'| on the inner level, dg/dt / |gamma'| on the outer.
double arc_second_derivative_fd(const BoundaryFunctionSpec& f, const ParametricCurve& c, double t)
{
    const double hi = 1e-5, ho = 1e-4;
    const auto g = [&](double s) { return (f.value(s + hi) - f.value(s - hi)) / (2 * hi) / c.speed(s); };
    return (g(t + ho) - g(t - ho)) / (2 * ho) / c.speed(t);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

BoundaryFunctionSpec random_series(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<FourierTerm> terms;
    for (int k = 1; k <= 5; ++k)
        terms.push_back({k, u(rng), u(rng)});
    return BoundaryFunctionSpec::trig(u(rng), terms);
}

}  // namespace

TEST_CASE("spectral density on the unit circle")
{
    const auto m = unit_mesh(128);
    const auto circle = make_circle(1.0);
    const auto sin2 = BoundaryFunctionSpec::preset("sin2theta");
    const auto d = second_tangential_derivative_spectral(sin2, m);
    for (std::size_t j = 0; j < m->size(); ++j) {
        const double t = m->parameter_values[j];
        CHECK(std::abs(d[j] + 4 * std::sin(2 * t)) < 1e-12);
        CHECK(std::abs(d[j] - arc_second_derivative_fd(sin2, circle, t)) < 1e-5);
    }

    const auto cos1 = BoundaryFunctionSpec::preset("cos_theta");
    const auto dc = second_tangential_derivative_spectral(cos1, m);
    for (std::size_t j = 0; j < m->size(); ++j) {
        const double t = m->parameter_values[j];
        CHECK(std::abs(dc[j] + std::cos(t)) < 1e-12);
        CHECK(std::abs(dc[j] - arc_second_derivative_fd(cos1, circle, t)) < 1e-5);
    }
}

TEST_CASE("spectral density on a non-circular curve matches the arc-length oracle")
{
    const auto curve = make_fourier_curve(1.0, {{3, 0.2, 0.0}, {2, 0.0, 0.1}}, Vec2(0.5, 0.2));
    const auto m = mesh_curve(curve, 64);
    const auto f = BoundaryFunctionSpec::trig(0.3, {{1, 0.5, -0.2}, {2, 0.0, 1.0}, {4, 0.1, 0.0}});
    const auto d = second_tangential_derivative_spectral(f, m);
    for (std::size_t j = 0; j < m->size(); ++j)
        CHECK(std::abs(d[j] - arc_second_derivative_fd(f, curve, m->parameter_values[j])) < 1e-5);

    const auto zero = second_tangential_derivative_spectral(BoundaryFunctionSpec::constant(3.0), m);
    for (double v : zero.values)
        CHECK(v == 0.0);
}

TEST_CASE("spectral route rejects non-uniform meshes")
{
    BoundaryMesh warped = *unit_mesh(32);
    warped.parameter_values[5] += 0.01;
    const auto m = std::make_shared<const BoundaryMesh>(warped);
    CHECK_THROWS_AS(second_tangential_derivative_spectral(BoundaryFunctionSpec::preset("sin2theta"), m),
                    std::invalid_argument);
}

TEST_CASE("finite-difference density")
{
    const auto m = unit_mesh(256);
    const auto constant = second_tangential_derivative_fd(BoundaryFunctionSpec::constant(2.5).sample(m));
    for (double v : constant.values)
        CHECK(v == 0.0);

    const auto sin2 = BoundaryFunctionSpec::preset("sin2theta");
    const auto d = second_tangential_derivative_fd(sin2.sample(m));
    for (std::size_t j = 0; j < m->size(); ++j)
        CHECK(std::abs(d[j] + 4 * std::sin(2 * m->parameter_values[j])) < 1e-3);

    CHECK_THROWS_AS(second_tangential_derivative_fd(sin2.sample(unit_mesh(7))), std::invalid_argument);
}

TEST_CASE("finite-difference route converges at second order against the spectral route")
{
    const auto f = BoundaryFunctionSpec::trig(0.0, {{2, 0.3, 1.0}, {3, 0.0, 0.2}});
    for (const auto& make : {unit_mesh, lobed_mesh}) {
        std::vector<double> deviation;
        for (std::size_t n : {128u, 256u, 512u, 1024u}) {
            const auto m = make(n);
            deviation.push_back(max_abs_diff(second_tangential_derivative_fd(f.sample(m)).values,
                                             second_tangential_derivative_spectral(f, m).values));
        }
        for (std::size_t i = 1; i < deviation.size(); ++i) {
            const double ratio = deviation[i - 1] / deviation[i];
            CHECK(ratio >= 3.5);
            CHECK(ratio <= 4.5);
        }
    }
}

TEST_CASE("density is linear in the boundary data")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (const auto& m : {unit_mesh(96), lobed_mesh(96)}) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto f = random_series(rng), g = random_series(rng);
            const double alpha = u(rng), beta = u(rng);
            const auto df = second_tangential_derivative_spectral(f, m);
            const auto dg = second_tangential_derivative_spectral(g, m);
            const auto ff = second_tangential_derivative_fd(f.sample(m));
            const auto fg = second_tangential_derivative_fd(g.sample(m));

            std::vector<double> combo(m->size());
            const auto fs = f.sample(m), gs = g.sample(m);
            for (std::size_t j = 0; j < m->size(); ++j)
                combo[j] = alpha * fs[j] + beta * gs[j];
            const auto fd_combo = second_tangential_derivative_fd(BoundaryField(m, combo));

            std::vector<FourierTerm> terms = f.terms();
            for (auto& t : terms) {
                t.a *= alpha;
                t.b *= alpha;
            }
            for (auto t : g.terms()) {
                t.a *= beta;
                t.b *= beta;
                terms.push_back(t);
            }
            const auto spec_combo = second_tangential_derivative_spectral(
                BoundaryFunctionSpec::trig(alpha * f.constant_term() + beta * g.constant_term(), terms), m);

            double scale = 1.0;
            for (std::size_t j = 0; j < m->size(); ++j)
                scale = std::max({scale, std::abs(df[j]), std::abs(dg[j]), std::abs(ff[j]), std::abs(fg[j])});
            const double tol = 1e-13 * scale * (std::abs(alpha) + std::abs(beta) + 1) * 64;
            for (std::size_t j = 0; j < m->size(); ++j) {
                CHECK(std::abs(spec_combo[j] - (alpha * df[j] + beta * dg[j])) <= tol);
                CHECK(std::abs(fd_combo[j] - (alpha * ff[j] + beta * fg[j])) <= tol);
            }
        }
    }
}

TEST_CASE("zero_mean_check")
{
    std::mt19937_64 rng(22);
    const auto m = unit_mesh(256);
    CHECK(zero_mean_check(BoundaryField(m, std::vector<double>(256, 1.0))) == doctest::Approx(2 * pi));
    const auto sin2 = BoundaryFunctionSpec::preset("sin2theta");
    CHECK(std::abs(zero_mean_check(second_tangential_derivative_fd(sin2.sample(m)))) < 1e-10);

    for (const auto& mesh : {unit_mesh(256), lobed_mesh(256), lobed_mesh(512)}) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto f = random_series(rng);
            CHECK(std::abs(zero_mean_check(second_tangential_derivative_spectral(f, mesh))) < 1e-10);
            CHECK(std::abs(zero_mean_check(second_tangential_derivative_fd(f.sample(mesh)))) < 1e-10);
        }
    }
}

TEST_CASE("presets")
{
    CHECK(BoundaryFunctionSpec::preset("sin2theta").value(pi / 4) == doctest::Approx(1.0));
    CHECK(BoundaryFunctionSpec::preset("cos_theta").value(0.0) == doctest::Approx(1.0));
    CHECK(BoundaryFunctionSpec::preset("sin_theta_plus_sin3theta").value(pi / 2) == doctest::Approx(0.0));
    CHECK(BoundaryFunctionSpec::preset("unit").value(1.234) == doctest::Approx(1.0));
    CHECK_THROWS_AS(BoundaryFunctionSpec::preset("sin5theta"), std::invalid_argument);
}

TEST_CASE("real spherical harmonics are orthonormal under the sphere quadrature")
{
    const auto q = make_sphere_quadrature(20, 40);
    std::vector<std::pair<int, int>> lm;
    for (int l = 0; l <= 4; ++l)
        for (int m = -l; m <= l; ++m)
            lm.emplace_back(l, m);
    for (auto [l1, m1] : lm)
        for (auto [l2, m2] : lm) {
            double s = 0.0;
            for (std::size_t i = 0; i < q->size(); ++i)
                s += q->weights[i] * real_spherical_harmonic(l1, m1, q->nodes[i]) *
                     real_spherical_harmonic(l2, m2, q->nodes[i]);
            CHECK(std::abs(s - (l1 == l2 && m1 == m2 ? 1.0 : 0.0)) < 1e-12);
        }
}

TEST_CASE("tangential Laplacian on the sphere")
{
    const auto q = make_sphere_quadrature(12, 24);
    const auto c00 = tangential_laplacian_sphere({{{0, 0, 1.0}}}, q);
    for (double v : c00.values)
        CHECK(v == 0.0);

    const auto c20 = tangential_laplacian_sphere({{{2, 0, 1.0}}}, q);
    const auto c10 = tangential_laplacian_sphere({{{1, 0, 1.0}}}, q);
    for (std::size_t i = 0; i < q->size(); ++i) {
        CHECK(std::abs(c20.values[i] + 6 * real_spherical_harmonic(2, 0, q->nodes[i])) < 1e-10);
        CHECK(std::abs(c10.values[i] + 2 * real_spherical_harmonic(1, 0, q->nodes[i])) < 1e-10);
    }

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SphericalHarmonicField mixed;
    for (int l = 0; l <= 5; ++l)
        for (int m = -l; m <= l; ++m)
            mixed.coefficients.push_back({l, m, u(rng)});
    const auto lap = tangential_laplacian_sphere(mixed, q);
    for (std::size_t i = 0; i < q->size(); ++i) {
        double expected = 0.0;
        for (const auto& [l, m, c] : mixed.coefficients)
            expected += -l * (l + 1) * c * real_spherical_harmonic(l, m, q->nodes[i]);
        CHECK(std::abs(lap.values[i] - expected) < 1e-10);
    }
}

TEST_CASE("Laplace-Beltrami matches second differences along two orthogonal great circles")
{
    SphericalHarmonicField f{{{2, 0, 1.0}, {3, -2, 0.5}, {1, 1, -0.7}}};
    const auto q = make_sphere_quadrature(6, 12);
    const auto lap = tangential_laplacian_sphere(f, q);
    const double h = 1e-3;
    for (std::size_t i = 0; i < q->size(); i += 5) {
        const Vec3 p = q->nodes[i];
        const Vec3 e1 = p.unitOrthogonal();
        const Vec3 e2 = p.cross(e1);
        double fd = 0.0;
        for (const Vec3& e : {e1, e2}) {
            const auto along = [&](double s) { return f.value(std::cos(s) * p + std::sin(s) * e); };
            fd += (along(h) - 2 * along(0.0) + along(-h)) / (h * h);
        }
        CHECK(std::abs(lap.values[i] - fd) < 1e-5);
    }
}
