#include "dirichlet/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dirichlet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;

void require_dimension(const KernelConvention& conv, int dim)
{
    if (conv.dimension != dim)
        throw std::invalid_argument("kernel convention dimension does not match the point type");
}

template <class V>
V separation(const V& r, const V& rp)
{
    V d = rp - r;
    if (d.squaredNorm() == 0.0)
        throw std::domain_error("Green's function evaluated at coincident points");
    return d;
}

}  // namespace

double green(const KernelConvention& conv, const Vec2& r, const Vec2& rp)
{
    require_dimension(conv, 2);
    // log of the squared distance keeps G(r, rp) == G(rp, r) bit for bit.
    const Vec2 d = separation(r, rp);
    return conv.factor() * std::log(d.squaredNorm()) / (2.0 * kTwoPi);
}

double green(const KernelConvention& conv, const Vec3& r, const Vec3& rp)
{
    require_dimension(conv, 3);
    const Vec3 d = separation(r, rp);
    return -conv.factor() / (kFourPi * d.norm());
}

Vec2 green_gradient_source(const KernelConvention& conv, const Vec2& r, const Vec2& rp)
{
    require_dimension(conv, 2);
    const Vec2 d = separation(r, rp);
    return conv.factor() * d / (kTwoPi * d.squaredNorm());
}

Vec3 green_gradient_source(const KernelConvention& conv, const Vec3& r, const Vec3& rp)
{
    require_dimension(conv, 3);
    const Vec3 d = separation(r, rp);
    const double dist = d.norm();
    return conv.factor() * d / (kFourPi * dist * dist * dist);
}

double green_dnormal(const KernelConvention& conv, const Vec2& r, const Vec2& rp, const Vec2& n_p)
{
    return green_gradient_source(conv, r, rp).dot(n_p);
}

double green_dnormal(const KernelConvention& conv, const Vec3& r, const Vec3& rp, const Vec3& n_p)
{
    return green_gradient_source(conv, r, rp).dot(n_p);
}

double diagonal_log_self_weight(double h)
{
    if (!(h > 0.0))
        throw std::invalid_argument("self-weight element length must be positive");
    return h / kTwoPi * (std::log(h / 2.0) - 1.0);
}

double punctured_log_self_weight(double h)
{
    if (!(h > 0.0))
        throw std::invalid_argument("self-weight element length must be positive");
    return h / kTwoPi * std::log(h / kTwoPi);
}

}  // namespace dirichlet
