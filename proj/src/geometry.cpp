#include "dirichlet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace dirichlet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Curve sampling density used by the winding-number and distance searches.
constexpr int kClassifySamples = 4096;

}  // namespace

double ParametricCurve::radius_at(double t) const
{
    double r = a0_;
    for (const auto& term : terms_)
        r += term.a * std::cos(term.k * t) + term.b * std::sin(term.k * t);
    return r;
}

double ParametricCurve::radius_d1(double t) const
{
    double r = 0.0;
    for (const auto& term : terms_)
        r += term.k * (-term.a * std::sin(term.k * t) + term.b * std::cos(term.k * t));
    return r;
}

double ParametricCurve::radius_d2(double t) const
{
    double r = 0.0;
    for (const auto& term : terms_) {
        const double kk = double(term.k) * term.k;
        r -= kk * (term.a * std::cos(term.k * t) + term.b * std::sin(term.k * t));
    }
    return r;
}

Vec2 ParametricCurve::position(double t) const
{
    return center_ + radius_at(t) * Vec2(std::cos(t), std::sin(t));
}

Vec2 ParametricCurve::d1(double t) const
{
    const Vec2 e(std::cos(t), std::sin(t));
    const Vec2 e_perp(-std::sin(t), std::cos(t));
    return radius_d1(t) * e + radius_at(t) * e_perp;
}

Vec2 ParametricCurve::d2(double t) const
{
    const Vec2 e(std::cos(t), std::sin(t));
    const Vec2 e_perp(-std::sin(t), std::cos(t));
    const double r = radius_at(t);
    return (radius_d2(t) - r) * e + 2.0 * radius_d1(t) * e_perp;
}

double ParametricCurve::curvature(double t) const
{
    const Vec2 g1 = d1(t);
    const Vec2 g2 = d2(t);
    const double speed = g1.norm();
    return (g1.x() * g2.y() - g1.y() * g2.x()) / (speed * speed * speed);
}

ParametricCurve make_circle(double radius, const Vec2& center)
{
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("circle radius must be positive, got " + std::to_string(radius));
    ParametricCurve c;
    c.kind_ = ParametricCurve::Kind::circle;
    c.center_ = center;
    c.a0_ = radius;
    return c;
}

ParametricCurve make_fourier_curve(double a0, std::vector<FourierTerm> terms, const Vec2& center)
{
    for (const auto& term : terms)
        if (term.k < 0)
            throw std::invalid_argument("radial Fourier order must be non-negative");
    ParametricCurve c;
    c.kind_ = ParametricCurve::Kind::fourier_radial;
    c.center_ = center;
    c.a0_ = a0;
    c.terms_ = std::move(terms);
    for (int i = 0; i < kPositivityCheckSamples; ++i) {
        const double t = kTwoPi * i / kPositivityCheckSamples;
        const double r = c.radius_at(t);
        if (!(r > 0.0))
            throw std::invalid_argument("radial function r(t) = " + std::to_string(r) +
                                        " is not positive at t = " + std::to_string(t));
    }
    return c;
}

double BoundaryMesh::max_weight() const
{
    return weights.empty() ? 0.0 : *std::max_element(weights.begin(), weights.end());
}

MeshPtr mesh_curve(const ParametricCurve& curve, std::size_t n)
{
    if (n < kMinMeshNodes)
        throw std::invalid_argument("mesh needs at least " + std::to_string(kMinMeshNodes) +
                                    " nodes, got " + std::to_string(n));
    auto mesh = std::make_shared<BoundaryMesh>();
    mesh->source_curve = curve;
    mesh->nodes.resize(n);
    mesh->tangents.resize(n);
    mesh->normals.resize(n);
    mesh->weights.resize(n);
    mesh->arc_positions.resize(n);
    mesh->parameter_values.resize(n);
    mesh->curvature.resize(n);

    const double dt = kTwoPi / double(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = dt * (double(j) + 0.5);
        const Vec2 g1 = curve.d1(t);
        const double speed = g1.norm();
        mesh->parameter_values[j] = t;
        mesh->nodes[j] = curve.position(t);
        mesh->tangents[j] = g1 / speed;
        // Counter-clockwise orientation: tangent rotated by -90 degrees points outward.
        mesh->normals[j] = Vec2(mesh->tangents[j].y(), -mesh->tangents[j].x());
        mesh->weights[j] = speed * dt;
        mesh->curvature[j] = curve.curvature(t);
    }

    double perimeter = 0.0;
    for (double w : mesh->weights)
        perimeter += w;
    mesh->perimeter = perimeter;

    mesh->arc_positions[0] = 0.5 * mesh->weights[0];
    for (std::size_t j = 1; j < n; ++j)
        mesh->arc_positions[j] = mesh->arc_positions[j - 1] + 0.5 * (mesh->weights[j - 1] + mesh->weights[j]);
    return mesh;
}

bool has_uniform_parameters(const BoundaryMesh& mesh)
{
    const std::size_t n = mesh.parameter_values.size();
    if (n == 0 || n != mesh.nodes.size())
        return false;
    const double dt = kTwoPi / double(n);
    for (std::size_t j = 0; j < n; ++j)
        if (std::abs(mesh.parameter_values[j] - dt * (double(j) + 0.5)) > 1e-12)
            return false;
    return true;
}

const char* region_name(Region r)
{
    switch (r) {
    case Region::inside: return "inside";
    case Region::outside: return "outside";
    case Region::near_boundary: return "near_boundary";
    }
    return "unknown";
}

double distance_to_curve(const ParametricCurve& curve, const Vec2& p)
{
    if (curve.kind() == ParametricCurve::Kind::circle)
        return std::abs((p - curve.center()).norm() - curve.a0());

    double best_t = 0.0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kClassifySamples; ++i) {
        const double t = kTwoPi * i / kClassifySamples;
        const double d2 = (curve.position(t) - p).squaredNorm();
        if (d2 < best_d2) {
            best_d2 = d2;
            best_t = t;
        }
    }

    // Newton on (gamma(t) - p) . gamma'(t) = 0, kept inside the sampling cell.
    const double cell = kTwoPi / kClassifySamples;
    double t = best_t;
    for (int it = 0; it < 20; ++it) {
        const Vec2 diff = curve.position(t) - p;
        const Vec2 g1 = curve.d1(t);
        const double g = diff.dot(g1);
        const double dg = g1.squaredNorm() + diff.dot(curve.d2(t));
        if (dg <= 0.0)
            break;
        const double step = std::clamp(g / dg, -cell, cell);
        t -= step;
        if (std::abs(step) < 1e-15)
            break;
    }
    const double refined = (curve.position(t) - p).squaredNorm();
    return std::sqrt(std::min(refined, best_d2));
}

Region classify_point(const ParametricCurve& curve, const Vec2& p, double band)
{
    if (!(band > 0.0))
        throw std::invalid_argument("near-boundary band must be positive");
    if (distance_to_curve(curve, p) < band)
        return Region::near_boundary;

    double winding = 0.0;
    Vec2 prev = curve.position(0.0) - p;
    for (int i = 1; i <= kClassifySamples; ++i) {
        const Vec2 cur = curve.position(kTwoPi * i / kClassifySamples) - p;
        winding += std::atan2(prev.x() * cur.y() - prev.y() * cur.x(), prev.dot(cur));
        prev = cur;
    }
    return std::abs(winding) > std::numbers::pi ? Region::inside : Region::outside;
}

Region classify_point_sphere(const Vec3& p, double band)
{
    if (!(band > 0.0))
        throw std::invalid_argument("near-boundary band must be positive");
    const double r = p.norm();
    if (std::abs(r - 1.0) < band)
        return Region::near_boundary;
    return r < 1.0 ? Region::inside : Region::outside;
}

GaussLegendre gauss_legendre(int n)
{
    if (n < 1)
        throw std::invalid_argument("Gauss-Legendre order must be positive");

    // P_n(x) and P_n'(x) by the three-term recurrence.
    const auto legendre = [n](double x) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1)
            p0 = 1.0;
        return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
    };

    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const double dp = legendre(x).second;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

SphereQuadraturePtr make_sphere_quadrature(int n_lat, int n_lon)
{
    if (n_lat < 4 || n_lon < 8)
        throw std::invalid_argument("sphere quadrature needs n_lat >= 4 and n_lon >= 8");
    const GaussLegendre gl = gauss_legendre(n_lat);
    auto quad = std::make_shared<SphereQuadrature>();
    quad->n_lat = n_lat;
    quad->n_lon = n_lon;
    quad->cos_polar = gl.nodes;
    quad->nodes.reserve(std::size_t(n_lat) * n_lon);
    quad->weights.reserve(std::size_t(n_lat) * n_lon);
    const double dphi = kTwoPi / n_lon;
    for (int i = 0; i < n_lat; ++i) {
        const double z = gl.nodes[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        for (int j = 0; j < n_lon; ++j) {
            const double phi = dphi * (j + 0.5);
            Vec3 node(s * std::cos(phi), s * std::sin(phi), z);
            quad->nodes.push_back(node.normalized());
            quad->weights.push_back(gl.weights[i] * dphi);
        }
    }
    return quad;
}

}  // namespace dirichlet
