#pragma once

// Flattened N^2 x N^2 representations of the transverse Helmholtz operator
// H = laplacian_perp + k0^2 n^2, row r = flat_index(m, n), column s = flat_index(p, q).

#include "helmprop/fft.hpp"
#include "helmprop/grid.hpp"
#include "helmprop/index_profile.hpp"
#include "helmprop/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace helmprop {

enum class BuildMethod { fft, fd, custom };

inline const char* to_string(BuildMethod m) {
    switch (m) {
        case BuildMethod::fft: return "fft";
        case BuildMethod::fd: return "fd";
        case BuildMethod::custom: return "custom";
    }
    return "?";
}

struct OperatorMatrix {
    Grid grid;
    double k0;
    Eigen::MatrixXd entries;
    BuildMethod method = BuildMethod::custom;

    /// max |A - A^T|.
    double max_asymmetry() const { return (entries - entries.transpose()).cwiseAbs().maxCoeff(); }
};

/// k0 = 2 pi / lambda0, lengths in um.
inline double wavenumber(double wavelength) {
    if (!(wavelength > 0.0))
        throw std::invalid_argument("wavenumber: wavelength must be positive");
    return 2.0 * std::numbers::pi / wavelength;
}

/// Signed wrapped frequency index: m for m <= N/2, m - N above.
inline int wrapped_frequency(int m, int n_points) { return m <= n_points / 2 ? m : m - n_points; }

/// Diagonal of the Laplacian in wavevector space, -(2 pi / W)^2 (kx^2 + ky^2), in FFT order.
inline RealGrid spectral_laplacian_multipliers(const Grid& grid) {
    const int n = grid.n_points();
    if (n % 2 != 0)
        throw std::invalid_argument("spectral_laplacian_multipliers: N must be even");
    const double dk = 2.0 * std::numbers::pi / grid.window_width();
    RealGrid mult(n, n);
    for (int b = 0; b < n; ++b) {
        const double kb = wrapped_frequency(b, n);
        for (int a = 0; a < n; ++a) {
            const double ka = wrapped_frequency(a, n);
            mult(a, b) = -dk * dk * (ka * ka + kb * kb);
        }
    }
    return mult;
}

/// Applies the spectral Laplacian to a field without building a matrix.
inline ComplexGrid apply_spectral_laplacian(const Grid& grid, const ComplexGrid& values) {
    const Fft2d fft(grid.n_points());
    ComplexGrid work = values;
    fft.forward(work);
    work.array() *= spectral_laplacian_multipliers(grid).array();
    fft.inverse(work);
    return work;
}

inline void require_index_grid(const Grid& grid, const IndexSquaredMap& index_sq, double k0,
                               const char* what) {
    require_same_grid(grid, index_sq.grid(), what);
    if (!(k0 > 0.0) || !std::isfinite(k0))
        throw std::invalid_argument(std::string(what) + ": k0 must be positive");
}

/// Impulse-response construction: column s is IFFT(multipliers * FFT(delta_s)), real part,
/// plus k0^2 n^2 on the diagonal.
inline OperatorMatrix build_operator_fft(const Grid& grid, const IndexSquaredMap& index_sq, double k0) {
    require_index_grid(grid, index_sq, k0, "build_operator_fft");
    const int n = grid.n_points();
    const int size = grid.size();
    const RealGrid mult = spectral_laplacian_multipliers(grid);
    const Fft2d fft(n);

    Eigen::MatrixXd entries(size, size);
    std::vector<double> column_imag(static_cast<std::size_t>(size), 0.0);
    // Each column is an independent impulse response.
    parallel_for(size, kernel_threads(), [&](int begin, int end) {
        ComplexGrid work(n, n);
        for (int s = begin; s < end; ++s) {
            work.setZero();
            work.data()[s] = 1.0;
            fft.forward(work);
            work.array() *= mult.array();
            fft.inverse(work);
            double imag = 0.0;
            for (int r = 0; r < size; ++r) {
                entries(r, s) = work.data()[r].real();
                imag = std::max(imag, std::abs(work.data()[r].imag()));
            }
            column_imag[static_cast<std::size_t>(s)] = imag;
        }
    });
    const double max_imag = *std::max_element(column_imag.begin(), column_imag.end());
    const double scale = entries.cwiseAbs().maxCoeff();
    if (max_imag > 1e-10 * std::max(scale, 1.0))
        throw std::logic_error("build_operator_fft: impulse response has a large imaginary residue");

    const double k0sq = k0 * k0;
    for (int q = 0; q < n; ++q)
        for (int p = 0; p < n; ++p)
            entries(p + n * q, p + n * q) += k0sq * index_sq(p, q);
    return {grid, k0, std::move(entries), BuildMethod::fft};
}

/// Periodic 5-point stencil: -4/dx^2 + k0^2 n^2 on the diagonal, 1/dx^2 to each neighbour.
inline OperatorMatrix build_operator_fd(const Grid& grid, const IndexSquaredMap& index_sq, double k0) {
    require_index_grid(grid, index_sq, k0, "build_operator_fd");
    const int n = grid.n_points();
    const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
    const double k0sq = k0 * k0;
    Eigen::MatrixXd entries = Eigen::MatrixXd::Zero(grid.size(), grid.size());
    auto wrap = [n](int i) { return (i % n + n) % n; };
    for (int q = 0; q < n; ++q) {
        for (int p = 0; p < n; ++p) {
            const int s = p + n * q;
            entries(s, s) += k0sq * index_sq(p, q) - 4.0 * inv_h2;
            // += so that N = 2, where +1 and -1 neighbours coincide, stays consistent
            entries(wrap(p + 1) + n * q, s) += inv_h2;
            entries(wrap(p - 1) + n * q, s) += inv_h2;
            entries(p + n * wrap(q + 1), s) += inv_h2;
            entries(p + n * wrap(q - 1), s) += inv_h2;
        }
    }
    return {grid, k0, std::move(entries), BuildMethod::fd};
}

inline Field apply_operator_dense(const OperatorMatrix& op, const Field& field) {
    require_same_grid(op.grid, field.grid(), "apply_operator_dense");
    const Eigen::VectorXcd out = op.entries.cast<Complex>() * field.flat();
    return unflatten(field.grid(), out);
}

}  // namespace helmprop
