#pragma once

// Square sampling grid, complex field container and scalar diagnostics.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace helmprop {

using Complex = std::complex<double>;

/// Real N x N samples, indexed (ix, iy). Column-major storage makes the
/// linear offset of (ix, iy) equal to flat_index(ix, iy, N).
using RealGrid = Eigen::MatrixXd;
using ComplexGrid = Eigen::MatrixXcd;

/// Uniform square lattice centered on sample N/2.
class Grid {
public:
    Grid(int n_points, double spacing) : n_points_(n_points), spacing_(spacing) {
        if (n_points <= 0 || n_points % 2 != 0)
            throw std::invalid_argument("grid: n_points must be positive and even, got " +
                                        std::to_string(n_points));
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw std::invalid_argument("grid: spacing must be positive and finite");
        coordinates_.resize(static_cast<std::size_t>(n_points));
        for (int i = 0; i < n_points; ++i)
            coordinates_[static_cast<std::size_t>(i)] = (i - n_points / 2) * spacing;
    }

    int n_points() const noexcept { return n_points_; }
    double spacing() const noexcept { return spacing_; }
    double window_width() const noexcept { return n_points_ * spacing_; }
    /// Number of flattened unknowns, N^2.
    int size() const noexcept { return n_points_ * n_points_; }

    double coordinate(int i) const { return coordinates_.at(static_cast<std::size_t>(i)); }
    const std::vector<double>& coordinates() const noexcept { return coordinates_; }

    friend bool operator==(const Grid& a, const Grid& b) noexcept {
        return a.n_points_ == b.n_points_ && a.spacing_ == b.spacing_;
    }

private:
    int n_points_;
    double spacing_;
    std::vector<double> coordinates_;
};

inline Grid make_grid(int n_points, double spacing) { return Grid(n_points, spacing); }

/// r = i + N*j.
inline int flat_index(int i, int j, int n_points) {
    if (i < 0 || j < 0 || i >= n_points || j >= n_points)
        throw std::out_of_range("flat_index: (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") outside a " + std::to_string(n_points) + "-point grid");
    return i + n_points * j;
}

/// Inverse of flat_index.
inline std::pair<int, int> unflat_index(int r, int n_points) {
    if (r < 0 || r >= n_points * n_points)
        throw std::out_of_range("unflat_index: " + std::to_string(r) + " outside [0, N^2)");
    return {r % n_points, r / n_points};
}

inline void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b))
        throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

/// Complex amplitude samples E(x_i, y_j) on a grid.
class Field {
public:
    explicit Field(Grid grid)
        : grid_(std::move(grid)), values_(ComplexGrid::Zero(grid_.n_points(), grid_.n_points())) {}

    Field(Grid grid, ComplexGrid values) : grid_(std::move(grid)), values_(std::move(values)) {
        if (values_.rows() != grid_.n_points() || values_.cols() != grid_.n_points())
            throw std::invalid_argument("field: value shape does not match the grid");
    }

    const Grid& grid() const noexcept { return grid_; }
    const ComplexGrid& values() const noexcept { return values_; }
    ComplexGrid& values() noexcept { return values_; }

    Complex operator()(int i, int j) const { return values_(i, j); }
    Complex& operator()(int i, int j) { return values_(i, j); }

    /// Flattened view, index r = flat_index(i, j).
    Eigen::Map<const Eigen::VectorXcd> flat() const {
        return {values_.data(), static_cast<Eigen::Index>(values_.size())};
    }

    bool all_finite() const { return values_.allFinite(); }

private:
    Grid grid_;
    ComplexGrid values_;
};

inline Field unflatten(const Grid& grid, const Eigen::VectorXcd& v) {
    if (v.size() != grid.size())
        throw std::invalid_argument("unflatten: vector length does not match N^2");
    ComplexGrid values = Eigen::Map<const ComplexGrid>(v.data(), grid.n_points(), grid.n_points());
    return Field(grid, std::move(values));
}

/// exp(-((x - x0)^2 + (y - y0)^2) / width^2); width is the 1/e amplitude radius.
inline Field gaussian_field(const Grid& grid, double width, double offset_x, double offset_y) {
    if (!(width > 0.0))
        throw std::invalid_argument("gaussian_field: width must be positive");
    Field field(grid);
    const int n = grid.n_points();
    for (int j = 0; j < n; ++j) {
        const double dy = grid.coordinate(j) - offset_y;
        for (int i = 0; i < n; ++i) {
            const double dx = grid.coordinate(i) - offset_x;
            field(i, j) = std::exp(-(dx * dx + dy * dy) / (width * width));
        }
    }
    return field;
}

/// sqrt(sum |E|^2 dx^2).
inline double l2_norm(const Field& field) {
    const double h = field.grid().spacing();
    return std::sqrt(field.values().squaredNorm()) * h;
}

struct Centroid {
    double x;
    double y;
};

/// Intensity-weighted beam center.
inline Centroid centroid(const Field& field) {
    const Grid& g = field.grid();
    double total = 0.0, sx = 0.0, sy = 0.0;
    for (int j = 0; j < g.n_points(); ++j) {
        for (int i = 0; i < g.n_points(); ++i) {
            const double w = std::norm(field(i, j));
            total += w;
            sx += w * g.coordinate(i);
            sy += w * g.coordinate(j);
        }
    }
    if (!(total > 0.0))
        throw std::domain_error("centroid: field is identically zero");
    return {sx / total, sy / total};
}

}  // namespace helmprop
