#pragma once

// Truncated-SVD one-way Helmholtz propagator.
//
// The flattened operator is factored as U S V^T. Each retained singular triplet
// q carries a signed eigenvalue lambda_q = sigma_q sign<u_q, v_q>, and one step
// of length dz multiplies its projection by exp(i dz sqrt(lambda_q)), principal
// branch, so modes with lambda_q < 0 decay instead of oscillating.

#include "helmprop/grid.hpp"
#include "helmprop/operator_builder.hpp"

#include <Eigen/SVD>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace helmprop {

namespace detail {
inline std::atomic<std::uint64_t>& svd_counter() {
    static std::atomic<std::uint64_t> count{0};
    return count;
}
}  // namespace detail

/// Number of SVD factorizations performed by this process.
inline std::uint64_t svd_invocations() { return detail::svd_counter().load(); }

/// Principal-branch phase factor exp(i dz sqrt(lambda)); |.| <= 1.
inline Complex mode_phase(double lambda, double step_length) {
    const Complex root = std::sqrt(Complex(lambda, 0.0));
    return std::exp(Complex(0.0, 1.0) * step_length * root);
}

/// sigma * sign(u . v), with sign(0) taken as +1.
inline double signed_spectrum(const Eigen::Ref<const Eigen::VectorXd>& u_column, double sigma,
                              const Eigen::Ref<const Eigen::VectorXd>& v_row) {
    if (u_column.size() != v_row.size())
        throw std::invalid_argument("signed_spectrum: vector lengths differ");
    if (std::abs(u_column.norm() - 1.0) > 1e-8 || std::abs(v_row.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("signed_spectrum: singular vectors must have unit norm");
    if (sigma < 0.0)
        throw std::invalid_argument("signed_spectrum: singular value must be nonnegative");
    return u_column.dot(v_row) < 0.0 ? -sigma : sigma;
}

/// Truncated singular factors of H with the step phase folded into the right factor.
///
/// left holds columns of U and right holds rows of V^T multiplied by the phase, so
/// left(i, j, q) = left_matrix(flat(i, j), q) and right(i, j, q) = right_matrix(q, flat(i, j)).
class PropagatorFactors {
public:
    PropagatorFactors(Grid grid, Eigen::MatrixXd left, Eigen::MatrixXcd right,
                      Eigen::VectorXd singular_values, Eigen::VectorXd signed_eigenvalues,
                      double step_length)
        : grid_(std::move(grid)),
          left_(std::move(left)),
          right_(std::move(right)),
          singular_values_(std::move(singular_values)),
          signed_eigenvalues_(std::move(signed_eigenvalues)),
          step_length_(step_length) {}

    const Grid& grid() const noexcept { return grid_; }
    int n_singular() const noexcept { return static_cast<int>(singular_values_.size()); }
    double step_length() const noexcept { return step_length_; }

    const Eigen::MatrixXd& left_matrix() const noexcept { return left_; }
    const Eigen::MatrixXcd& right_matrix() const noexcept { return right_; }
    const Eigen::VectorXd& singular_values() const noexcept { return singular_values_; }
    const Eigen::VectorXd& signed_eigenvalues() const noexcept { return signed_eigenvalues_; }

    double left(int i, int j, int q) const { return left_(flat_index(i, j, grid_.n_points()), q); }
    Complex right(int i, int j, int q) const { return right_(q, flat_index(i, j, grid_.n_points())); }

    Complex phase(int q) const { return mode_phase(signed_eigenvalues_(q), step_length_); }

private:
    Grid grid_;
    Eigen::MatrixXd left_;
    Eigen::MatrixXcd right_;
    Eigen::VectorXd singular_values_;
    Eigen::VectorXd signed_eigenvalues_;
    double step_length_;
};

inline PropagatorFactors factorize(const OperatorMatrix& op, int n_singular, double step_length) {
    const int size = op.grid.size();
    if (op.entries.rows() != size || op.entries.cols() != size)
        throw std::invalid_argument("factorize: operator is not N^2 x N^2");
    if (n_singular < 1 || n_singular > size)
        throw std::invalid_argument("factorize: n_singular must lie in [1, " + std::to_string(size) +
                                    "], got " + std::to_string(n_singular));
    if (!(step_length > 0.0) || !std::isfinite(step_length))
        throw std::invalid_argument("factorize: step_length must be positive");
    if (!op.entries.allFinite())
        throw std::invalid_argument("factorize: operator has non-finite entries");

    detail::svd_counter().fetch_add(1);
    const Eigen::BDCSVD<Eigen::MatrixXd> svd(op.entries, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success)
        throw std::runtime_error("factorize: SVD did not converge");

    const Eigen::MatrixXd& u = svd.matrixU();
    const Eigen::MatrixXd& v = svd.matrixV();
    Eigen::VectorXd sigma = svd.singularValues().head(n_singular);
    Eigen::VectorXd lambda(n_singular);
    Eigen::MatrixXcd right(n_singular, size);
    for (int q = 0; q < n_singular; ++q) {
        lambda(q) = signed_spectrum(u.col(q), sigma(q), v.col(q));
        right.row(q) = v.col(q).transpose().cast<Complex>() * mode_phase(lambda(q), step_length);
    }
    return PropagatorFactors(op.grid, u.leftCols(n_singular), std::move(right), std::move(sigma),
                             std::move(lambda), step_length);
}

/// Projects onto the retained right vectors, then expands in the left vectors.
inline Field step(const PropagatorFactors& factors, const Field& field) {
    require_same_grid(factors.grid(), field.grid(), "step");
    const Eigen::VectorXcd coeffs = factors.right_matrix() * field.flat();
    const Eigen::VectorXcd out = factors.left_matrix().cast<Complex>() * coeffs;
    return unflatten(field.grid(), out);
}

/// field * exp(i dz k0 dn), elementwise.
inline Field perturbative_phase(const Field& field, const RealGrid& delta_n, double k0, double step_length) {
    if (delta_n.rows() != field.values().rows() || delta_n.cols() != field.values().cols())
        throw std::invalid_argument("perturbative_phase: delta_n shape does not match the field");
    Field out = field;
    const double scale = step_length * k0;
    out.values().array() *= (Complex(0.0, 1.0) * scale * delta_n.array().cast<Complex>()).exp();
    return out;
}

}  // namespace helmprop
