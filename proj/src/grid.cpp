#include "explab/grid.hpp"

#include "explab/errors.hpp"

namespace explab {

GridLayout GridLayout::from(const Grid1D& grid) {
    if (grid.n_interior < 1) throw InvalidArgument("Grid1D needs at least one interior point");
    GridLayout layout;
    layout.spatial_dim = 1;
    layout.n = grid.n_interior;
    layout.dx = grid.dx();
    layout.sides = {grid.left, grid.right};
    layout.closure_size = grid.n_interior + 2;
    layout.boundary_nodes = {0, grid.n_interior + 1};

    auto push = [&](std::size_t i, double weight, bool linf) {
        layout.unknowns.push_back(i);
        layout.weights.push_back(weight);
        layout.in_linf.push_back(linf ? 1 : 0);
    };
    // A Neumann endpoint is an unknown carrying half a cell of quadrature
    // weight; it is left out of the max norm.
    if (grid.left == BoundaryKind::neumann) push(0, 0.5 * layout.dx, false);
    for (std::size_t i = 1; i <= grid.n_interior; ++i) push(i, layout.dx, true);
    if (grid.right == BoundaryKind::neumann) push(grid.n_interior + 1, 0.5 * layout.dx, false);
    return layout;
}

GridLayout GridLayout::from(const Grid2D& grid) {
    if (grid.n_per_dim < 1) throw InvalidArgument("Grid2D needs at least one interior point");
    GridLayout layout;
    layout.spatial_dim = 2;
    layout.n = grid.n_per_dim;
    layout.dx = grid.dx();
    const std::size_t m = grid.n_per_dim + 2;
    layout.closure_size = m * m;
    const double w = layout.dx * layout.dx;
    for (std::size_t iy = 1; iy + 1 < m; ++iy) {
        for (std::size_t ix = 1; ix + 1 < m; ++ix) {
            layout.unknowns.push_back(iy * m + ix);
            layout.weights.push_back(w);
            layout.in_linf.push_back(1);
        }
    }
    for (std::size_t iy = 0; iy < m; ++iy) {
        for (std::size_t ix = 0; ix < m; ++ix) {
            if (ix == 0 || iy == 0 || ix + 1 == m || iy + 1 == m) layout.boundary_nodes.push_back(iy * m + ix);
        }
    }
    return layout;
}

std::array<double, 2> GridLayout::coords(std::size_t closure_index) const {
    if (spatial_dim == 1) return {static_cast<double>(closure_index) * dx, 0.0};
    const std::size_t m = n + 2;
    return {static_cast<double>(closure_index % m) * dx, static_cast<double>(closure_index / m) * dx};
}

BoundaryKind GridLayout::kind_at(std::size_t closure_index) const {
    if (spatial_dim == 1) {
        if (closure_index == 0) return sides[0];
        if (closure_index == n + 1) return sides[1];
    }
    return BoundaryKind::dirichlet;
}

std::vector<double> GridLayout::restrict_to_state(std::span<const double> closure) const {
    if (closure.size() != closure_size) throw DimensionMismatch(closure_size, closure.size());
    std::vector<double> out(unknowns.size());
    for (std::size_t k = 0; k < unknowns.size(); ++k) out[k] = closure[unknowns[k]];
    return out;
}

void GridLayout::scatter(std::span<const double> state, std::span<double> closure) const {
    if (state.size() != unknowns.size()) throw DimensionMismatch(unknowns.size(), state.size());
    if (closure.size() != closure_size) throw DimensionMismatch(closure_size, closure.size());
    for (std::size_t k = 0; k < unknowns.size(); ++k) closure[unknowns[k]] = state[k];
}

}  // namespace explab
