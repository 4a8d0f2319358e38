#pragma once

#include <span>
#include <vector>

#include "explab/grid.hpp"

namespace explab {

/// Relative residual at which the 2D conjugate-gradient solve stops.
inline constexpr double kEllipticTolerance = 1e-12;

/// Solves D_h z = rhs on the interior of a Dirichlet grid, with z equal to
/// `closure` on the boundary. Returns the full closure vector. 1D uses the
/// Thomas algorithm; 2D uses conjugate gradients.
std::vector<double> solve_dirichlet_poisson(const GridLayout& layout, std::span<const double> rhs_closure,
                                            std::span<const double> closure);

/// Five-point (three-point in 1D) Laplacian of a closure vector on interior
/// nodes. Boundary entries are zero unless `one_sided_boundary` is set, in
/// which case 1D boundary entries use the second-order one-sided stencil
/// (2u_0 - 5u_1 + 4u_2 - u_3)/dx^2.
std::vector<double> closure_laplacian(const GridLayout& layout, std::span<const double> closure,
                                      bool one_sided_boundary = false);

}  // namespace explab
