#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "explab/grid.hpp"

namespace explab {

enum class OperatorStructure { sine_diagonalizable, dense_symmetric, kronecker_sum };

/// Finite-difference discretization of the Laplacian restricted to homogeneous
/// boundary conditions, together with its spectral decomposition.
///
/// The object is a cheap handle to immutable shared state and is safe to use
/// concurrently from several threads. All eigenvalues are real and negative.
class DiscreteOperator {
public:
    struct Impl;

    std::size_t dimension() const;
    OperatorStructure structure() const;
    const GridLayout& layout() const;

    /// Eigenvalues, in the order produced by forward().
    std::span<const double> eigenvalues() const;

    /// Shift defining the positive operator omega*I - A used by fractional norms.
    double omega() const { return omega_; }
    DiscreteOperator shifted(double omega) const;

    /// Matrix-vector product via the stencil.
    void apply(std::span<const double> v, std::span<double> out) const;
    std::vector<double> apply(std::span<const double> v) const;

    /// Coefficients in the eigenbasis, orthonormal with respect to the
    /// unscaled node weights (identity for Dirichlet grids).
    void forward(std::span<const double> v, std::span<double> coeffs) const;
    void inverse(std::span<const double> coeffs, std::span<double> v) const;

    /// Explicitly assembled matrix; intended for oracles and small problems.
    Eigen::MatrixXd assemble() const;

private:
    friend DiscreteOperator build_laplacian_1d(const Grid1D&);
    friend DiscreteOperator build_laplacian_2d(const Grid2D&);
    explicit DiscreteOperator(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    std::shared_ptr<const Impl> impl_;
    double omega_ = 0.0;
};

/// Second-order centered Laplacian on (0,1). Supports Dirichlet-Dirichlet
/// (sine-diagonalizable) and Dirichlet-Neumann. The Neumann end uses a ghost
/// point, so the last row reads (2 u_{n} - 2 u_{n+1}) / dx^2.
DiscreteOperator build_laplacian_1d(const Grid1D& grid);

/// Five-point Laplacian on the unit square with Dirichlet conditions,
/// diagonalized by the tensorized sine transform.
DiscreteOperator build_laplacian_2d(const Grid2D& grid);

/// Closed-form eigenvalue -(4/dx^2) sin^2(k pi dx / 2) of the 1D Dirichlet Laplacian.
double dirichlet_eigenvalue(std::size_t k, double dx);

}  // namespace explab
