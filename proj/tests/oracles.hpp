#pragma once

// Test-only reference computations, kept independent of the library's FFT and
// SVD paths.

#include "helmprop/grid.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace oracle {

using helmprop::Complex;
using helmprop::ComplexGrid;
using helmprop::Field;
using helmprop::Grid;

inline int kappa(int m, int n) { return m <= n / 2 ? m : m - n; }

/// Direct O(N^4) evaluation of IFFT(mult * FFT(values)).
inline ComplexGrid naive_spectral_apply(const ComplexGrid& values, const Eigen::MatrixXd& mult) {
    const int n = static_cast<int>(values.rows());
    const double two_pi_n = 2.0 * std::numbers::pi / n;
    ComplexGrid spec = ComplexGrid::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    spec(a, b) += values(i, j) * std::polar(1.0, -two_pi_n * (a * i + b * j));
    spec.array() *= mult.array();
    ComplexGrid out = ComplexGrid::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    out(i, j) += spec(a, b) * std::polar(1.0, two_pi_n * (a * i + b * j));
            out(i, j) /= static_cast<double>(n) * n;
        }
    return out;
}

/// Spectral Laplacian eigenvalue -(2 pi / W)^2 (kx^2 + ky^2) for mode (mx, my).
inline double spectral_dispersion(const Grid& g, int mx, int my) {
    const double dk = 2.0 * std::numbers::pi / g.window_width();
    const int n = g.n_points();
    return -dk * dk * (kappa(mx, n) * kappa(mx, n) + kappa(my, n) * kappa(my, n));
}

/// 5-point stencil eigenvalue -(4 - 2cos(2 pi mx / N) - 2cos(2 pi my / N)) / dx^2.
inline double stencil_dispersion(const Grid& g, int mx, int my) {
    const int n = g.n_points();
    const double h = g.spacing();
    return -(4.0 - 2.0 * std::cos(2.0 * std::numbers::pi * mx / n) - 2.0 * std::cos(2.0 * std::numbers::pi * my / n)) /
           (h * h);
}

/// Real plane wave cos(2 pi (mx i + my j) / N) / N.
inline Field cosine_mode(const Grid& g, int mx, int my) {
    const int n = g.n_points();
    Field f(g);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            f(i, j) = std::cos(2.0 * std::numbers::pi * (mx * i + my * j) / n) / n;
    return f;
}

/// Complex plane wave exp(2 pi i (mx i + my j) / N).
inline Field complex_mode(const Grid& g, int mx, int my) {
    const int n = g.n_points();
    Field f(g);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            f(i, j) = std::polar(1.0, 2.0 * std::numbers::pi * (mx * i + my * j) / n);
    return f;
}

inline Field random_field(const Grid& g, std::mt19937_64& rng) {
    std::normal_distribution<double> d;
    Field f(g);
    for (int i = 0; i < g.n_points(); ++i)
        for (int j = 0; j < g.n_points(); ++j)
            f(i, j) = Complex(d(rng), d(rng));
    return f;
}

inline double max_abs_diff(const Field& a, const Field& b) {
    return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

}  // namespace oracle
