#ifndef DIRICHLET_BOUNDARY_CALCULUS_HPP
#define DIRICHLET_BOUNDARY_CALCULUS_HPP

#include <string>
#include <vector>

#include "dirichlet/geometry.hpp"

namespace dirichlet {

/// Scalar samples attached one-to-one to the nodes of a boundary mesh.
struct BoundaryField {
    MeshPtr mesh;
    std::vector<double> values;

    BoundaryField() = default;
    BoundaryField(MeshPtr m, std::vector<double> v);

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t j) const { return values[j]; }
};

/*
 * Boundary data as a function of the curve parameter,
 *
 *     f(t) = c0 + sum_k (a_k cos kt + b_k sin kt).
 *
 * Presets are named shorthands for common series.
 */
class BoundaryFunctionSpec {
public:
    enum class Kind { trig_series, preset };

    BoundaryFunctionSpec() = default;
    static BoundaryFunctionSpec trig(double c0, std::vector<FourierTerm> terms);
    static BoundaryFunctionSpec constant(double c) { return trig(c, {}); }
    /// "sin2theta", "cos_theta", "sin_theta_plus_sin3theta", "unit". Throws std::invalid_argument otherwise.
    static BoundaryFunctionSpec preset(const std::string& name);

    Kind kind() const { return kind_; }
    const std::string& preset_name() const { return preset_; }
    double constant_term() const { return c0_; }
    const std::vector<FourierTerm>& terms() const { return terms_; }
    int degree() const;

    double value(double t) const;
    double d1(double t) const;
    double d2(double t) const;

    /// Values at the given parameters.
    std::vector<double> sample(const std::vector<double>& params) const;
    BoundaryField sample(const MeshPtr& mesh) const;

    BoundaryFunctionSpec scaled(double alpha, double beta) const;

private:
    Kind kind_ = Kind::trig_series;
    std::string preset_;
    double c0_ = 0.0;
    std::vector<FourierTerm> terms_;
};

/// Arc-length second derivative d^2 f / ds^2 at the nodes by exact differentiation of the
/// series plus the chain rule. Throws std::invalid_argument on a non-uniform mesh.
BoundaryField second_tangential_derivative_spectral(const BoundaryFunctionSpec& spec, const MeshPtr& mesh);

/*
 * Cyclic three-point second difference in arc length,
 *
 *     [(f_{j+1} - f_j)/h_{j+1/2} - (f_j - f_{j-1})/h_{j-1/2}] / dsigma_j,
 *
 * with h_{j+1/2} = (dsigma_j + dsigma_{j+1}) / 2. On a uniform-speed curve this is
 * (f_{j+1} - 2 f_j + f_{j-1}) / ds^2, and sum_j density_j dsigma_j telescopes to zero.
 */
BoundaryField second_tangential_derivative_fd(const BoundaryField& samples);

/// sum_j density_j dsigma_j.
double zero_mean_check(const BoundaryField& density);

/// Real orthonormal spherical harmonic Y_lm(theta, phi); m > 0 carries cos(m phi), m < 0 sin(|m| phi).
double real_spherical_harmonic(int l, int m, double polar, double azimuth);
double real_spherical_harmonic(int l, int m, const Vec3& direction);

struct HarmonicCoefficient {
    int l = 0;
    int m = 0;
    double c = 0.0;
};

/// f = sum c_lm Y_lm on the unit sphere.
struct SphericalHarmonicField {
    std::vector<HarmonicCoefficient> coefficients;

    int l_max() const;
    double value(const Vec3& direction) const;
    /// Laplace-Beltrami image, sum -l(l+1) c_lm Y_lm, evaluated at a direction.
    double surface_laplacian(const Vec3& direction) const;
};

/// Samples on the nodes of a sphere quadrature.
struct SphereField {
    SphereQuadraturePtr quadrature;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

SphereField sample_on_sphere(const SphericalHarmonicField& field, const SphereQuadraturePtr& quad);

/// Per-mode multiplication by -l(l+1), synthesised at the quadrature nodes.
SphereField tangential_laplacian_sphere(const SphericalHarmonicField& field, const SphereQuadraturePtr& quad);

}  // namespace dirichlet

#endif
