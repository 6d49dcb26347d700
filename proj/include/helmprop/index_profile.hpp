#pragma once

#include "helmprop/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace helmprop {

/// Clamped parabolic n^2 profile: n0^2 (1 - depth (min(r, a) / a)^2).
struct ParabolicProfile {
    double n0_squared = 1.45;
    double depth = 0.1;
    double clamp_radius = 25.0;

    void validate() const {
        if (!(n0_squared > 0.0) || !std::isfinite(n0_squared))
            throw std::invalid_argument("profile: n0_squared must be positive");
        if (!(depth >= 0.0 && depth < 1.0))
            throw std::invalid_argument("profile: depth must lie in [0, 1)");
        if (!(clamp_radius > 0.0) || !std::isfinite(clamp_radius))
            throw std::invalid_argument("profile: clamp_radius must be positive");
    }
};

inline double parabolic_index_squared(double x, double y, const ParabolicProfile& profile) {
    const double r = std::hypot(x, y);
    const double rho = std::min(r, profile.clamp_radius) / profile.clamp_radius;
    return profile.n0_squared * (1.0 - profile.depth * rho * rho);
}

/// Real n^2 samples on a grid. The k0^2 factor is applied by the operator builders.
class IndexSquaredMap {
public:
    IndexSquaredMap(Grid grid, RealGrid values) : grid_(std::move(grid)), values_(std::move(values)) {
        if (values_.rows() != grid_.n_points() || values_.cols() != grid_.n_points())
            throw std::invalid_argument("index map: value shape does not match the grid");
        if (!values_.allFinite() || !(values_.minCoeff() > 0.0))
            throw std::invalid_argument("index map: n^2 samples must be positive and finite");
    }

    /// Uniform medium.
    IndexSquaredMap(Grid grid, double n_squared)
        : IndexSquaredMap(grid, RealGrid::Constant(grid.n_points(), grid.n_points(), n_squared)) {}

    const Grid& grid() const noexcept { return grid_; }
    const RealGrid& values() const noexcept { return values_; }
    double operator()(int i, int j) const { return values_(i, j); }

private:
    Grid grid_;
    RealGrid values_;
};

inline IndexSquaredMap sample_profile(const Grid& grid, const ParabolicProfile& profile) {
    profile.validate();
    const int n = grid.n_points();
    RealGrid values(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            values(i, j) = parabolic_index_squared(grid.coordinate(i), grid.coordinate(j), profile);
    return IndexSquaredMap(grid, std::move(values));
}

/// sqrt(n^2_current) - sqrt(n^2_initial): a difference of indices, not of their squares.
inline RealGrid index_delta_map(const IndexSquaredMap& current, const IndexSquaredMap& initial) {
    require_same_grid(current.grid(), initial.grid(), "index_delta_map");
    return current.values().array().sqrt().matrix() - initial.values().array().sqrt().matrix();
}

/// Pointwise linear blend a + t (b - a), t in [0, 1].
inline IndexSquaredMap blend_index_maps(const IndexSquaredMap& a, const IndexSquaredMap& b, double t) {
    require_same_grid(a.grid(), b.grid(), "blend_index_maps");
    t = std::clamp(t, 0.0, 1.0);
    return IndexSquaredMap(a.grid(), a.values() + t * (b.values() - a.values()));
}

}  // namespace helmprop
