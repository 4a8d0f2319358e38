#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace explab {

enum class BoundaryKind { dirichlet, neumann };

/// Uniform grid on (0,1) with n_interior inner points, dx = 1/(n_interior+1).
struct Grid1D {
    std::size_t n_interior = 0;
    BoundaryKind left = BoundaryKind::dirichlet;
    BoundaryKind right = BoundaryKind::dirichlet;

    double dx() const { return 1.0 / static_cast<double>(n_interior + 1); }
    /// Coordinate of closure node i, i = 0..n_interior+1.
    double x(std::size_t i) const { return static_cast<double>(i) * dx(); }
};

/// Uniform grid on (0,1)x(0,1), Dirichlet on all four sides.
struct Grid2D {
    std::size_t n_per_dim = 0;

    double dx() const { return 1.0 / static_cast<double>(n_per_dim + 1); }
};

/// Node bookkeeping shared by operators, corrections and norms.
///
/// Grid functions live on the closure (all nodes including the boundary).
/// State vectors hold only the unknowns: interior nodes, plus a Neumann
/// endpoint when present.
///
/// 1D closure index i in [0, n+1] maps to x = i*dx.
/// 2D closure index is iy*(n+2) + ix; unknowns are ordered lexicographically
/// with x fastest: state index (iy-1)*n + (ix-1).
struct GridLayout {
    int spatial_dim = 1;
    std::size_t n = 0;
    double dx = 0.0;
    std::array<BoundaryKind, 2> sides{BoundaryKind::dirichlet, BoundaryKind::dirichlet};

    std::size_t closure_size = 0;
    std::vector<std::size_t> unknowns;        ///< closure index of each state entry
    std::vector<double> weights;              ///< quadrature weight of each state entry
    std::vector<char> in_linf;                ///< whether the entry enters the max norm
    std::vector<std::size_t> boundary_nodes;  ///< closure indices on the boundary

    static GridLayout from(const Grid1D& grid);
    static GridLayout from(const Grid2D& grid);

    std::size_t state_size() const { return unknowns.size(); }
    std::array<double, 2> coords(std::size_t closure_index) const;
    /// Kind of boundary condition imposed at a boundary closure node.
    BoundaryKind kind_at(std::size_t closure_index) const;

    /// Closure values restricted to the unknowns.
    std::vector<double> restrict_to_state(std::span<const double> closure) const;
    /// Overwrite the unknown entries of a closure vector.
    void scatter(std::span<const double> state, std::span<double> closure) const;
};

}  // namespace explab
