#ifndef DIRICHLET_GEOMETRY_HPP
#define DIRICHLET_GEOMETRY_HPP

#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Core>

namespace dirichlet {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

/// One term a_k cos(k t) + b_k sin(k t) of a real trigonometric series.
struct FourierTerm {
    int k = 0;
    double a = 0.0;
    double b = 0.0;
};

/*
 * Smooth, closed, star-shaped planar curve
 *
 *     gamma(t) = center + r(t) (cos t, sin t),   t in [0, 2 pi)
 *
 * with r(t) = a0 + sum_k (a_k cos kt + b_k sin kt). A circle is the special
 * case r(t) = radius. Position and the first two parameter derivatives are
 * available in closed form.
 */
class ParametricCurve {
public:
    enum class Kind { circle, fourier_radial };

    Kind kind() const { return kind_; }
    const Vec2& center() const { return center_; }
    double a0() const { return a0_; }
    const std::vector<FourierTerm>& radial_terms() const { return terms_; }

    /// r(t) and its first two derivatives.
    double radius_at(double t) const;
    double radius_d1(double t) const;
    double radius_d2(double t) const;

    Vec2 position(double t) const;
    Vec2 d1(double t) const;
    Vec2 d2(double t) const;
    double speed(double t) const { return d1(t).norm(); }
    /// Signed curvature (x'y'' - y'x'')/|gamma'|^3, positive for a counter-clockwise convex arc.
    double curvature(double t) const;

private:
    friend ParametricCurve make_circle(double radius, const Vec2& center);
    friend ParametricCurve make_fourier_curve(double a0, std::vector<FourierTerm> terms, const Vec2& center);

    Kind kind_ = Kind::circle;
    Vec2 center_ = Vec2::Zero();
    double a0_ = 1.0;
    std::vector<FourierTerm> terms_;
};

/// Throws std::invalid_argument for radius <= 0.
ParametricCurve make_circle(double radius, const Vec2& center = Vec2::Zero());

/// Number of samples used to verify r(t) > 0.
inline constexpr int kPositivityCheckSamples = 4096;

/// Throws std::invalid_argument if r(t) <= 0 anywhere on a 4096-point check grid
/// or if a term has negative order.
ParametricCurve make_fourier_curve(double a0, std::vector<FourierTerm> terms,
                                   const Vec2& center = Vec2::Zero());

/*
 * Nystrom mesh of a curve: N nodes at parameter midpoints t_j = 2 pi (j + 1/2) / N.
 * Weights are the midpoint-rule arc-length weights |gamma'(t_j)| 2 pi / N, which are
 * spectrally accurate for smooth periodic integrands.
 */
struct BoundaryMesh {
    std::vector<Vec2> nodes;
    std::vector<Vec2> tangents;
    std::vector<Vec2> normals;
    std::vector<double> weights;
    std::vector<double> arc_positions;
    std::vector<double> parameter_values;
    std::vector<double> curvature;
    double perimeter = 0.0;
    ParametricCurve source_curve;

    std::size_t size() const { return nodes.size(); }
    double max_weight() const;
    /// Default near-boundary band, 2 max_j dsigma_j.
    double default_band() const { return 2.0 * max_weight(); }
};

using MeshPtr = std::shared_ptr<const BoundaryMesh>;

/// Minimum accepted mesh size.
inline constexpr std::size_t kMinMeshNodes = 4;

MeshPtr mesh_curve(const ParametricCurve& curve, std::size_t n);

/// Relative tolerance on sum(weights) vs. the exact perimeter promised for N >= 256.
inline constexpr double kPerimeterTolerance = 1e-8;

/// True when parameter values are equispaced midpoints within 1e-12.
bool has_uniform_parameters(const BoundaryMesh& mesh);

enum class Region { inside, outside, near_boundary };

const char* region_name(Region r);

/*
 * Inside/outside by a discretized winding number over a fine sampling of the
 * curve; near_boundary whenever the distance to the curve is below band.
 */
Region classify_point(const ParametricCurve& curve, const Vec2& p, double band);

/// Distance from p to the curve (sampled search refined by Newton iterations).
double distance_to_curve(const ParametricCurve& curve, const Vec2& p);

/// Unit-sphere counterpart of classify_point.
Region classify_point_sphere(const Vec3& p, double band);

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

/*
 * Product rule on the unit sphere: Gauss-Legendre in cos(polar angle) crossed
 * with the uniform midpoint rule in longitude. Nodes are ordered latitude-major.
 */
struct SphereQuadrature {
    std::vector<Vec3> nodes;
    std::vector<double> weights;
    int n_lat = 0;
    int n_lon = 0;
    /// Gauss nodes in cos(polar angle), ascending.
    std::vector<double> cos_polar;

    std::size_t size() const { return nodes.size(); }
};

using SphereQuadraturePtr = std::shared_ptr<const SphereQuadrature>;

SphereQuadraturePtr make_sphere_quadrature(int n_lat, int n_lon);

}  // namespace dirichlet

#endif
