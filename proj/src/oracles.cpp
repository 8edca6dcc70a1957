#include "dirichlet/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dirichlet::oracles {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double trig(Trig kind, double x)
{
    return kind == Trig::cos ? std::cos(x) : std::sin(x);
}

double harmonic_at(int l, int m, const Vec3& r)
{
    const double rho = r.norm();
    if (rho == 0.0)
        return l == 0 ? real_spherical_harmonic(0, 0, 0.0, 0.0) : 0.0;
    return std::pow(rho, l) * real_spherical_harmonic(l, m, r);
}

void require_ball_interior(const Vec3& r)
{
    if (!(r.norm() < 1.0))
        throw std::invalid_argument("sphere oracle needs |r| < 1");
}

}  // namespace

DiskPoint DiskPoint::from_cartesian(const Vec2& p)
{
    return {p.norm(), std::atan2(p.y(), p.x())};
}

double poisson_kernel_disk(const BoundaryFunctionSpec& f, const DiskPoint& z, int n_quad)
{
    if (!(z.rho >= 0.0 && z.rho <= kPoissonMaxRadius))
        throw std::invalid_argument("Poisson-kernel quadrature needs 0 <= rho <= 0.95");
    if (n_quad < 64)
        throw std::invalid_argument("Poisson-kernel quadrature needs at least 64 nodes");
    const double rho2 = z.rho * z.rho;
    const double h = kTwoPi / n_quad;
    double sum = 0.0;
    for (int j = 0; j < n_quad; ++j) {
        const double t = h * j;
        const double dist2 = 1.0 - 2.0 * z.rho * std::cos(z.theta - t) + rho2;
        sum += f.value(t) * (1.0 - rho2) / dist2;
    }
    return sum * h / kTwoPi;
}

double disk_harmonic_mode(int k, Trig kind, const DiskPoint& z)
{
    if (k < 0)
        throw std::invalid_argument("harmonic mode order must be non-negative");
    return std::pow(z.rho, k) * trig(kind, k * z.theta);
}

double disk_harmonic_extension(const BoundaryFunctionSpec& f, const DiskPoint& z)
{
    double u = f.constant_term();
    for (const auto& term : f.terms())
        u += term.a * disk_harmonic_mode(term.k, Trig::cos, z) + term.b * disk_harmonic_mode(term.k, Trig::sin, z);
    return u;
}

double disk_neumann_data(const BoundaryFunctionSpec& f, double t)
{
    double q = 0.0;
    for (const auto& term : f.terms())
        q += term.k * (term.a * std::cos(term.k * t) + term.b * std::sin(term.k * t));
    return q;
}

double disk_single_layer_mode(int k, Trig kind, const DiskPoint& z)
{
    if (k < 1)
        throw std::invalid_argument("single-layer mode needs k >= 1 (k = 0 grows logarithmically)");
    if (!(z.rho < 1.0))
        throw std::invalid_argument("single-layer mode identity holds only for rho < 1");
    return -disk_harmonic_mode(k, kind, z) / (2.0 * k);
}

double predicted_c1_disk(int k)
{
    if (k < 1)
        throw std::invalid_argument("predicted calibration constant needs k >= 1");
    return 2.0 / k;
}

double sphere_harmonic_extension(int l, int m, const Vec3& r)
{
    require_ball_interior(r);
    return harmonic_at(l, m, r);
}

double sphere_harmonic_extension(const SphericalHarmonicField& f, const Vec3& r)
{
    double u = 0.0;
    for (const auto& c : f.coefficients)
        u += c.c * sphere_harmonic_extension(c.l, c.m, r);
    return u;
}

double sphere_single_layer_mode(int l, int m, const Vec3& r)
{
    require_ball_interior(r);
    return -harmonic_at(l, m, r) / (2.0 * l + 1.0);
}

double predicted_c1_sphere(int l)
{
    if (l < 1)
        throw std::invalid_argument("predicted calibration constant needs l >= 1");
    return (2.0 * l + 1.0) / (double(l) * (l + 1));
}

}  // namespace dirichlet::oracles
