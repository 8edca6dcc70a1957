#ifndef DIRICHLET_FIELD_GRID_HPP
#define DIRICHLET_FIELD_GRID_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "dirichlet/geometry.hpp"

namespace dirichlet {

/// Rectangular sample grid [x_min, x_max] x [y_min, y_max] with a common step.
/// On the sphere the second axis is z and the slice is taken at y = 0.
struct GridSpec {
    double x_min = -1.5;
    double x_max = 1.5;
    double y_min = -1.5;
    double y_max = 1.5;
    double step = 0.05;

    /// Throws std::invalid_argument for a non-positive step or inverted bounds.
    void validate() const;
    std::size_t nx() const;
    std::size_t ny() const;
    std::size_t size() const { return nx() * ny(); }
    /// Row-major: index = iy * nx + ix.
    double x(std::size_t ix) const { return x_min + step * double(ix); }
    double y(std::size_t iy) const { return y_min + step * double(iy); }
};

struct GridRow {
    double x = 0.0;
    double y = 0.0;
    std::optional<double> z;
    Region region = Region::outside;
    std::optional<double> psi_ss;
    std::optional<double> psi_bem;
    std::optional<double> psi_exact;
    std::optional<double> abs_err_ss;
    std::optional<double> abs_err_bem;
};

struct FieldGrid {
    GridSpec spec;
    double band = 0.0;
    std::vector<GridRow> rows;
};

}  // namespace dirichlet

#endif
