#ifndef DIRICHLET_KERNELS_HPP
#define DIRICHLET_KERNELS_HPP

#include "dirichlet/geometry.hpp"

namespace dirichlet {

/*
 * Free-space Green's function of the Laplacian.
 *
 *   standard:  laplacian G = delta,  G_2D = ln|r - r'| / (2 pi),  G_3D = -1 / (4 pi |r - r'|)
 *   flipped:   the negative of the above (laplacian G = -delta)
 *
 * Everything in the library uses the standard sign; the flipped sign exists so the
 * calibrated single-layer solver can be shown to be insensitive to the choice.
 */
struct KernelConvention {
    enum class Sign { standard, flipped };

    int dimension = 2;
    Sign sign = Sign::standard;

    double factor() const { return sign == Sign::standard ? 1.0 : -1.0; }

    static KernelConvention planar() { return {2, Sign::standard}; }
    static KernelConvention spatial() { return {3, Sign::standard}; }
};

/// Throws std::domain_error when r == rp and std::invalid_argument on a dimension mismatch.
double green(const KernelConvention& conv, const Vec2& r, const Vec2& rp);
double green(const KernelConvention& conv, const Vec3& r, const Vec3& rp);

/// Gradient of G with respect to its second argument, evaluated at rp.
Vec2 green_gradient_source(const KernelConvention& conv, const Vec2& r, const Vec2& rp);
Vec3 green_gradient_source(const KernelConvention& conv, const Vec3& r, const Vec3& rp);

/// Double-layer kernel grad' G(r, rp) . n_p.
double green_dnormal(const KernelConvention& conv, const Vec2& r, const Vec2& rp, const Vec2& n_p);
double green_dnormal(const KernelConvention& conv, const Vec3& r, const Vec3& rp, const Vec3& n_p);

/// Flat-element self integral of the 2-D kernel, (h / 2 pi)(ln(h/2) - 1).
double diagonal_log_self_weight(double h);

/*
 * Diagonal weight that makes the punctured midpoint rule consistent for the
 * 2-D log kernel: (h / 2 pi) ln(h / 2 pi). The off-diagonal point values sum to
 * the singular integral plus (h / 2 pi) ln(2 pi / h), which this term cancels.
 */
double punctured_log_self_weight(double h);

}  // namespace dirichlet

#endif
