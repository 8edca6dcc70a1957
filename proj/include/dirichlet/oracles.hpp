#ifndef DIRICHLET_ORACLES_HPP
#define DIRICHLET_ORACLES_HPP

#include "dirichlet/boundary_calculus.hpp"
#include "dirichlet/geometry.hpp"

// Closed-form and quadrature-exact reference values on the unit disk and unit sphere.
// All single-layer identities use the standard kernel sign (laplacian G = delta).

namespace dirichlet::oracles {

/// Polar point of the unit disk.
struct DiskPoint {
    double rho = 0.0;
    double theta = 0.0;

    static DiskPoint from_cartesian(const Vec2& p);
};

enum class Trig { cos, sin };

/// Largest radius accepted by poisson_kernel_disk.
inline constexpr double kPoissonMaxRadius = 0.95;

/// Trapezoid quadrature of the Poisson integral (1/2pi) int f (1 - |z|^2)/|z - e^{it}|^2 dt.
/// Throws std::invalid_argument for rho > 0.95 or n_quad < 64.
double poisson_kernel_disk(const BoundaryFunctionSpec& f, const DiskPoint& z, int n_quad);

/// rho^k cos(k theta) or rho^k sin(k theta).
double disk_harmonic_mode(int k, Trig kind, const DiskPoint& z);

/// Harmonic extension of a trigonometric series into the unit disk.
double disk_harmonic_extension(const BoundaryFunctionSpec& f, const DiskPoint& z);

/// Outward normal derivative on the unit circle of the harmonic extension of f, at parameter t.
double disk_neumann_data(const BoundaryFunctionSpec& f, double t);

/// Interior single-layer potential of density cos(k t) / sin(k t) on the unit circle:
/// -rho^k cos(k theta)/(2k) or -rho^k sin(k theta)/(2k). Rejects k = 0 and rho >= 1.
double disk_single_layer_mode(int k, Trig kind, const DiskPoint& z);

/// Calibration constant predicted for a pure mode k on the unit circle, 2/k.
double predicted_c1_disk(int k);

/// |r|^l Y_lm(r/|r|); rejects |r| >= 1.
double sphere_harmonic_extension(int l, int m, const Vec3& r);

/// Harmonic extension of a spherical-harmonic field into the unit ball.
double sphere_harmonic_extension(const SphericalHarmonicField& f, const Vec3& r);

/// Interior single-layer potential of density Y_lm on the unit sphere, -|r|^l Y_lm / (2l + 1).
double sphere_single_layer_mode(int l, int m, const Vec3& r);

/// (2l + 1) / (l (l + 1)).
double predicted_c1_sphere(int l);

}  // namespace dirichlet::oracles

#endif
