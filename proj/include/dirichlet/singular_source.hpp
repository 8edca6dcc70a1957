#ifndef DIRICHLET_SINGULAR_SOURCE_HPP
#define DIRICHLET_SINGULAR_SOURCE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dirichlet/boundary_calculus.hpp"
#include "dirichlet/field_grid.hpp"
#include "dirichlet/geometry.hpp"
#include "dirichlet/kernels.hpp"

/*
 * Singular-source solver for the interior Dirichlet problem.
 *
 * The harmonic function with boundary values f is represented as
 *
 *     psi(r) = C1 S(r) + C2,   S(r) = sum_j d_j G(r, r_j) dsigma_j,
 *
 * where d = d^2 f / ds^2 is the tangential second derivative of the boundary
 * data (the Laplace-Beltrami image on a sphere). No boundary integral equation
 * is solved; C1 and C2 are fitted against f at collocation points that sit
 * between the quadrature nodes. The representation is defined on both sides of
 * the boundary.
 */

namespace dirichlet {

/// Element endpoints t_i = 2 pi i / N, staggered half a cell from the quadrature nodes.
struct CollocationPoints {
    std::vector<Vec2> points;
    std::vector<double> parameters;

    std::size_t size() const { return points.size(); }
};

CollocationPoints collocation_points(const BoundaryMesh& mesh);

/// Minimum distance between an evaluation point and a node.
inline constexpr double kCoincidenceDistance = 1e-12;

/// Bare single-layer sum S(r), summed in ascending node order.
/// Throws std::domain_error if r lies within 1e-12 of a node.
double single_layer_sum(const BoundaryField& density, const Vec2& r,
                        const KernelConvention& conv = KernelConvention::planar());

struct Calibration {
    enum class Method { two_point, least_squares };

    double c1 = 0.0;
    double c2 = 0.0;
    Method method = Method::least_squares;
    /// sqrt(mean (C1 S_i + C2 - f_i)^2) over all collocation points.
    double rms_residual = 0.0;
    /// rms_residual / sqrt(mean f_i^2); equals rms_residual when f is identically zero.
    double relative_rms_residual = 0.0;
};

const char* method_name(Calibration::Method m);

/*
 * Low-level fits against precomputed single-layer values S_i and targets f_i.
 * Both throw DegenerateCalibration when S carries no information.
 */
Calibration fit_two_point(std::span<const double> s, std::span<const double> f, std::size_t a, std::size_t b);
Calibration fit_least_squares(std::span<const double> s, std::span<const double> f);

/// Solves f(r_a) = C1 S(r_a) + C2, f(r_b) = C1 S(r_b) + C2 at collocation indices a and b.
Calibration calibrate_two_point(const BoundaryField& density, std::span<const double> f_colloc, std::size_t a,
                                std::size_t b, const KernelConvention& conv = KernelConvention::planar());

/// Least-squares (C1, C2) over every collocation point, by Householder QR on the [S 1] design.
Calibration calibrate_least_squares(const BoundaryField& density, std::span<const double> f_colloc,
                                    const KernelConvention& conv = KernelConvention::planar());

struct SingularSourceSolution {
    BoundaryField density;
    double c1 = 0.0;
    double c2 = 0.0;
    KernelConvention convention = KernelConvention::planar();
    Calibration calibration;

    const BoundaryMesh& mesh() const { return *density.mesh; }
};

/// C1 S(r) + C2, inside or outside the curve.
double evaluate(const SingularSourceSolution& sol, const Vec2& r);

enum class DensityRoute { spectral, finite_difference };

struct SingularSourceOptions {
    DensityRoute route = DensityRoute::spectral;
    Calibration::Method calibration = Calibration::Method::least_squares;
    std::size_t point_a = 0;
    std::size_t point_b = 0;
    KernelConvention convention = KernelConvention::planar();
};

BoundaryField density_for(const BoundaryFunctionSpec& f, const MeshPtr& mesh, DensityRoute route);

/// Density, then calibration, for boundary data f on mesh.
SingularSourceSolution solve_singular_source(const BoundaryFunctionSpec& f, const MeshPtr& mesh,
                                             const SingularSourceOptions& options = {});

/// Samples the solution on a grid, labelling each point; near-boundary points keep their values.
FieldGrid evaluate_grid(const SingularSourceSolution& sol, const GridSpec& grid, double band, unsigned threads = 1);

struct ScanRow {
    int k = 0;
    double c1 = 0.0;
    double c2 = 0.0;
    double rms_residual = 0.0;
};

/// For each mode k: f = sin(k t), spectral density, least-squares calibration.
std::vector<ScanRow> calibration_scan(const ParametricCurve& curve, std::span<const int> modes, std::size_t n);

// ---------------------------------------------------------------------------
// Unit sphere

/// Bare single-layer sum over a sphere quadrature. Throws std::domain_error at a node.
double single_layer_sum(const SphereField& density, const Vec3& r,
                        const KernelConvention& conv = KernelConvention::spatial());

/*
 * Single-layer value at a point r0 of the unit sphere with the singularity
 * subtracted: sum_j w_j (d_j - d(r0)) G(r0, r_j) + d(r0) int G(r0, .) dsigma,
 * where the last integral is -1 for the standard sign.
 */
double single_layer_on_sphere(const SphereField& density, double density_at_r0, const Vec3& r0,
                              const KernelConvention& conv = KernelConvention::spatial());

/// Points midway in cos(polar angle) between Gauss nodes, at longitudes 2 pi j / n_lon.
std::vector<Vec3> sphere_collocation_points(const SphereQuadrature& quad);

struct SphereSingularSourceSolution {
    SphereField density;
    double c1 = 0.0;
    double c2 = 0.0;
    KernelConvention convention = KernelConvention::spatial();
    Calibration calibration;
};

/// Least-squares (C1, C2) over sphere_collocation_points, using singularity-subtracted sums.
Calibration calibrate_least_squares_sphere(const SphereField& density, const SphericalHarmonicField& f,
                                           const KernelConvention& conv = KernelConvention::spatial());

/// Laplace-Beltrami density and least-squares calibration over sphere_collocation_points.
SphereSingularSourceSolution solve_singular_source_sphere(const SphericalHarmonicField& f,
                                                          const SphereQuadraturePtr& quad,
                                                          const KernelConvention& conv = KernelConvention::spatial());

double evaluate(const SphereSingularSourceSolution& sol, const Vec3& r);

/// x-z slice (y = 0) of the sphere solution.
FieldGrid evaluate_grid(const SphereSingularSourceSolution& sol, const GridSpec& grid, double band,
                        unsigned threads = 1);

}  // namespace dirichlet

#endif
