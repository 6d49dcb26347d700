#pragma once

#include "helmprop/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace helmprop {

/// Separable cosine-power edge taper a(x) a(y), values in (0, 1].
class AbsorberMask {
public:
    AbsorberMask(Grid grid, RealGrid values, double margin, double exponent)
        : grid_(std::move(grid)), values_(std::move(values)), margin_(margin), exponent_(exponent) {}

    const Grid& grid() const noexcept { return grid_; }
    const RealGrid& values() const noexcept { return values_; }
    double margin() const noexcept { return margin_; }
    double exponent() const noexcept { return exponent_; }

private:
    Grid grid_;
    RealGrid values_;
    double margin_;
    double exponent_;
};

/// One-dimensional taper profile at coordinate x.
///
/// Distance to the edge is W/2 + dx/2 - |x|, which puts the extreme sample
/// x = -W/2 half a cell inside the edge and keeps the taper even in x.
inline double absorber_profile(double x, const Grid& grid, double margin, double exponent) {
    if (margin <= 0.0)
        return 1.0;
    const double edge_distance = 0.5 * (grid.window_width() + grid.spacing()) - std::abs(x);
    if (edge_distance >= margin)
        return 1.0;
    const double d = margin - edge_distance;
    return std::pow(std::cos(0.5 * std::numbers::pi * d / margin), exponent);
}

inline AbsorberMask make_absorber(const Grid& grid, double margin, double exponent) {
    if (!(margin >= 0.0) || margin >= 0.5 * grid.window_width())
        throw std::invalid_argument("make_absorber: margin must lie in [0, W/2)");
    if (!(exponent > 0.0))
        throw std::invalid_argument("make_absorber: exponent must be positive");
    const int n = grid.n_points();
    Eigen::VectorXd a(n);
    for (int i = 0; i < n; ++i)
        a(i) = absorber_profile(grid.coordinate(i), grid, margin, exponent);
    RealGrid values = a * a.transpose();
    return AbsorberMask(grid, std::move(values), margin, exponent);
}

inline Field apply_absorber(const Field& field, const AbsorberMask& mask) {
    require_same_grid(field.grid(), mask.grid(), "apply_absorber");
    Field out = field;
    out.values().array() *= mask.values().array().cast<Complex>();
    return out;
}

}  // namespace helmprop
