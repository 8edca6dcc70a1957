#include "dirichlet/field_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace dirichlet {

void GridSpec::validate() const
{
    if (!(step > 0.0) || !std::isfinite(step))
        throw std::invalid_argument("grid step must be positive");
    if (!(x_max >= x_min) || !(y_max >= y_min))
        throw std::invalid_argument("grid bounds are inverted");
}

std::size_t GridSpec::nx() const
{
    return std::size_t(std::floor((x_max - x_min) / step + 1e-9)) + 1;
}

std::size_t GridSpec::ny() const
{
    return std::size_t(std::floor((y_max - y_min) / step + 1e-9)) + 1;
}

}  // namespace dirichlet
