#pragma once

// Baselines for the SVD propagator: a symmetric split-step Fresnel BPM and an
// exact dense exp(i dz sqrt(H)) built from a full symmetric eigendecomposition.

#include "helmprop/fft.hpp"
#include "helmprop/grid.hpp"
#include "helmprop/index_profile.hpp"
#include "helmprop/operator_builder.hpp"
#include "helmprop/svd_propagator.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace helmprop {

struct FresnelConfig {
    double reference_index;  ///< n_ref, a refractive index (not squared)
    double k0;
    double step_length;
};

/// Half-step diffraction D(dz/2), phase screen P(dz), half-step diffraction D(dz/2).
/// Propagates the envelope; the carrier exp(i k0 n_ref z) is not included.
class FresnelStepper {
public:
    FresnelStepper(const Grid& grid, const FresnelConfig& cfg)
        : grid_(grid), cfg_(cfg), fft_(grid.n_points()) {
        if (!(cfg.reference_index > 0.0) || !(cfg.k0 > 0.0) || !(cfg.step_length > 0.0))
            throw std::invalid_argument("fresnel: reference_index, k0 and step_length must be positive");
        const RealGrid k_perp_sq = -spectral_laplacian_multipliers(grid);
        const double coeff = -0.5 * cfg.step_length / (2.0 * cfg.k0 * cfg.reference_index);
        half_diffraction_ = (Complex(0.0, 1.0) * coeff * k_perp_sq.array().cast<Complex>()).exp().matrix();
    }

    Field operator()(const IndexSquaredMap& index_sq, const Field& field) const {
        require_same_grid(grid_, field.grid(), "fresnel_step");
        require_same_grid(grid_, index_sq.grid(), "fresnel_step");
        const Eigen::ArrayXXcd screen =
            (Complex(0.0, 1.0) * cfg_.k0 * cfg_.step_length *
             (index_sq.values().array().sqrt() - cfg_.reference_index).cast<Complex>())
                .exp();
        ComplexGrid work = field.values();
        diffract(work);
        work.array() *= screen;
        diffract(work);
        return Field(grid_, std::move(work));
    }

private:
    void diffract(ComplexGrid& work) const {
        fft_.forward(work);
        work.array() *= half_diffraction_.array();
        fft_.inverse(work);
    }

    Grid grid_;
    FresnelConfig cfg_;
    Fft2d fft_;
    ComplexGrid half_diffraction_;
};

inline Field fresnel_step(const Grid& grid, const IndexSquaredMap& index_sq, const FresnelConfig& cfg,
                          const Field& field) {
    return FresnelStepper(grid, cfg)(index_sq, field);
}

/// Largest grid the dense oracle accepts, in flattened unknowns.
inline constexpr int dense_oracle_limit = 4096;

/// P = sum_q exp(i dz sqrt(lambda_q)) v_q v_q^T over the full spectrum of a symmetric H.
inline Eigen::MatrixXcd dense_helmholtz_propagator(const OperatorMatrix& op, double step_length) {
    const Eigen::Index size = op.entries.rows();
    if (size > dense_oracle_limit)
        throw std::invalid_argument("dense_helmholtz_propagator: N^2 exceeds the dense oracle limit");
    if (op.entries.cols() != size)
        throw std::invalid_argument("dense_helmholtz_propagator: operator is not square");
    if (!(step_length >= 0.0))
        throw std::invalid_argument("dense_helmholtz_propagator: negative step length");
    const double scale = std::max(op.entries.cwiseAbs().maxCoeff(), 1.0);
    if (op.max_asymmetry() > 1e-10 * scale)
        throw std::invalid_argument("dense_helmholtz_propagator: operator is not symmetric");
    if (step_length == 0.0)
        return Eigen::MatrixXcd::Identity(size, size);

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(op.entries);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("dense_helmholtz_propagator: eigensolver failed");
    Eigen::VectorXcd phases(size);
    for (Eigen::Index q = 0; q < size; ++q)
        phases(q) = mode_phase(eig.eigenvalues()(q), step_length);
    const Eigen::MatrixXcd vecs = eig.eigenvectors().cast<Complex>();
    return vecs * phases.asDiagonal() * vecs.transpose();
}

inline Field apply_dense_propagator(const Eigen::MatrixXcd& propagator, const Field& field) {
    if (propagator.rows() != field.grid().size() || propagator.cols() != field.grid().size())
        throw std::invalid_argument("apply_dense_propagator: dimension mismatch");
    const Eigen::VectorXcd out = propagator * field.flat();
    return unflatten(field.grid(), out);
}

}  // namespace helmprop
