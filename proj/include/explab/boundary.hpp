#pragma once

#include <array>
#include <functional>

#include "explab/errors.hpp"
#include "explab/grid.hpp"

namespace explab {

/// Function of (t, x, y); y is ignored in 1D.
using SpaceTimeFunction = std::function<double(double t, double x, double y)>;

/// Boundary data b(t) and its time derivatives.
///
/// `value(r, t, x, y)` returns d^r b / dt^r at the boundary point (x, y).
/// On a Dirichlet node b is the trace; on a Neumann node it is the outward
/// normal derivative.
struct BoundaryData {
    std::function<double(int order, double t, double x, double y)> value;
    int max_derivative = 0;
    /// b does not depend on time.
    bool stationary = false;

    double operator()(int order, double t, std::array<double, 2> p) const {
        if (order > max_derivative)
            throw InsufficientData("boundary data: time derivative of order " + std::to_string(order) +
                                   " not provided");
        if (stationary && order > 0) return 0.0;
        return value(order, t, p[0], p[1]);
    }
};

}  // namespace explab
