#include "dirichlet/boundary_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dirichlet {

BoundaryField::BoundaryField(MeshPtr m, std::vector<double> v)
    : mesh(std::move(m)), values(std::move(v))
{
    if (!mesh)
        throw std::invalid_argument("boundary field needs a mesh");
    if (values.size() != mesh->size())
        throw std::invalid_argument("boundary field length does not match the mesh");
}

BoundaryFunctionSpec BoundaryFunctionSpec::trig(double c0, std::vector<FourierTerm> terms)
{
    for (const auto& term : terms)
        if (term.k < 0)
            throw std::invalid_argument("trigonometric order must be non-negative");
    BoundaryFunctionSpec spec;
    spec.kind_ = Kind::trig_series;
    spec.c0_ = c0;
    spec.terms_ = std::move(terms);
    return spec;
}

BoundaryFunctionSpec BoundaryFunctionSpec::preset(const std::string& name)
{
    BoundaryFunctionSpec spec;
    if (name == "sin2theta")
        spec = trig(0.0, {{2, 0.0, 1.0}});
    else if (name == "cos_theta")
        spec = trig(0.0, {{1, 1.0, 0.0}});
    else if (name == "sin_theta_plus_sin3theta")
        spec = trig(0.0, {{1, 0.0, 1.0}, {3, 0.0, 1.0}});
    else if (name == "unit")
        spec = constant(1.0);
    else
        throw std::invalid_argument("unknown boundary function preset '" + name + "'");
    spec.kind_ = Kind::preset;
    spec.preset_ = name;
    return spec;
}

int BoundaryFunctionSpec::degree() const
{
    int d = 0;
    for (const auto& term : terms_)
        if (term.a != 0.0 || term.b != 0.0)
            d = std::max(d, term.k);
    return d;
}

double BoundaryFunctionSpec::value(double t) const
{
    double f = c0_;
    for (const auto& term : terms_)
        f += term.a * std::cos(term.k * t) + term.b * std::sin(term.k * t);
    return f;
}

double BoundaryFunctionSpec::d1(double t) const
{
    double f = 0.0;
    for (const auto& term : terms_)
        f += term.k * (term.b * std::cos(term.k * t) - term.a * std::sin(term.k * t));
    return f;
}

double BoundaryFunctionSpec::d2(double t) const
{
    double f = 0.0;
    for (const auto& term : terms_)
        f -= double(term.k) * term.k * (term.a * std::cos(term.k * t) + term.b * std::sin(term.k * t));
    return f;
}

std::vector<double> BoundaryFunctionSpec::sample(const std::vector<double>& params) const
{
    std::vector<double> out(params.size());
    std::transform(params.begin(), params.end(), out.begin(), [this](double t) { return value(t); });
    return out;
}

BoundaryField BoundaryFunctionSpec::sample(const MeshPtr& mesh) const
{
    return BoundaryField(mesh, sample(mesh->parameter_values));
}

BoundaryFunctionSpec BoundaryFunctionSpec::scaled(double alpha, double beta) const
{
    auto terms = terms_;
    for (auto& term : terms) {
        term.a *= alpha;
        term.b *= alpha;
    }
    return trig(alpha * c0_ + beta, std::move(terms));
}

BoundaryField second_tangential_derivative_spectral(const BoundaryFunctionSpec& spec, const MeshPtr& mesh)
{
    if (!has_uniform_parameters(*mesh))
        throw std::invalid_argument("spectral density needs a uniform-parameter mesh");
    const ParametricCurve& curve = mesh->source_curve;
    std::vector<double> density(mesh->size());
    for (std::size_t j = 0; j < mesh->size(); ++j) {
        const double t = mesh->parameter_values[j];
        const Vec2 g1 = curve.d1(t);
        const Vec2 g2 = curve.d2(t);
        const double speed2 = g1.squaredNorm();
        density[j] = spec.d2(t) / speed2 - spec.d1(t) * g1.dot(g2) / (speed2 * speed2);
    }
    return BoundaryField(mesh, std::move(density));
}

BoundaryField second_tangential_derivative_fd(const BoundaryField& samples)
{
    const BoundaryMesh& mesh = *samples.mesh;
    const std::size_t n = mesh.size();
    if (n < 8)
        throw std::invalid_argument("finite-difference density needs at least 8 nodes");
    if (!has_uniform_parameters(mesh))
        throw std::invalid_argument("finite-difference density needs a uniform-parameter mesh");

    const auto& w = mesh.weights;
    const auto& f = samples.values;
    std::vector<double> density(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t next = (j + 1) % n;
        const std::size_t prev = (j + n - 1) % n;
        const double h_plus = 0.5 * (w[j] + w[next]);
        const double h_minus = 0.5 * (w[j] + w[prev]);
        density[j] = ((f[next] - f[j]) / h_plus - (f[j] - f[prev]) / h_minus) / w[j];
    }
    return BoundaryField(samples.mesh, std::move(density));
}

double zero_mean_check(const BoundaryField& density)
{
    double total = 0.0;
    for (std::size_t j = 0; j < density.size(); ++j)
        total += density.values[j] * density.mesh->weights[j];
    return total;
}

double real_spherical_harmonic(int l, int m, double polar, double azimuth)
{
    if (l < 0 || std::abs(m) > l)
        throw std::invalid_argument("spherical harmonic needs l >= 0 and |m| <= l");
    const unsigned ul = unsigned(l);
    const unsigned um = unsigned(std::abs(m));
    const double p = std::sph_legendre(ul, um, polar);
    if (m == 0)
        return p;
    if (m > 0)
        return std::numbers::sqrt2 * p * std::cos(m * azimuth);
    return std::numbers::sqrt2 * p * std::sin(-m * azimuth);
}

double real_spherical_harmonic(int l, int m, const Vec3& direction)
{
    const double r = direction.norm();
    const double polar = std::acos(std::clamp(direction.z() / r, -1.0, 1.0));
    const double azimuth = std::atan2(direction.y(), direction.x());
    return real_spherical_harmonic(l, m, polar, azimuth);
}

int SphericalHarmonicField::l_max() const
{
    int l = 0;
    for (const auto& c : coefficients)
        l = std::max(l, c.l);
    return l;
}

double SphericalHarmonicField::value(const Vec3& direction) const
{
    double v = 0.0;
    for (const auto& c : coefficients)
        v += c.c * real_spherical_harmonic(c.l, c.m, direction);
    return v;
}

double SphericalHarmonicField::surface_laplacian(const Vec3& direction) const
{
    double v = 0.0;
    for (const auto& c : coefficients)
        v -= double(c.l) * (c.l + 1) * c.c * real_spherical_harmonic(c.l, c.m, direction);
    return v;
}

SphereField sample_on_sphere(const SphericalHarmonicField& field, const SphereQuadraturePtr& quad)
{
    SphereField out{quad, std::vector<double>(quad->size())};
    for (std::size_t j = 0; j < quad->size(); ++j)
        out.values[j] = field.value(quad->nodes[j]);
    return out;
}

SphereField tangential_laplacian_sphere(const SphericalHarmonicField& field, const SphereQuadraturePtr& quad)
{
    SphereField out{quad, std::vector<double>(quad->size())};
    for (std::size_t j = 0; j < quad->size(); ++j)
        out.values[j] = field.surface_laplacian(quad->nodes[j]);
    return out;
}

}  // namespace dirichlet
