#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "explab/boundary.hpp"
#include "explab/correction.hpp"
#include "explab/grid.hpp"

namespace explab {

/// Boundary traces B(D^level d^r f/dt^r)(t) of a linear source term.
struct SourceTraces {
    std::function<double(int level, int time_derivative, double t, double x, double y)> value;
    int max_level = 0;
    int max_time_derivative = 0;
};

/// Hierarchy of elliptic corrections z^{[m]}, ..., z^{[1]}, z with
/// D_h z^{[l]} = z^{[l+1]} and modified boundary data
///   b_l = d^l b/dt^l - sum_{j<l} B(D^j d^{l-1-j} f/dt^{l-1-j}).
/// The top level is the harmonic extension of b_m.
class CorrectionChain {
public:
    CorrectionChain(int order, GridLayout layout, BoundaryData boundary, SourceTraces traces);

    int order() const { return order_; }
    const GridLayout& layout() const { return *layout_; }

    /// d^r b_l/dt^r at a boundary closure node.
    double boundary_value(int level, int time_derivative, double t, std::size_t closure_node) const;

    /// levels[l] = z^{[l]} (closure), l = 0..m, with levels[0] = z. With
    /// time_derivative = 1 the same solves are driven by d b_l/dt.
    std::vector<std::vector<double>> levels(double t, int time_derivative = 0) const;

    /// Correction with z = levels[0], Dz = levels[1], dz/dt from the
    /// differentiated chain.
    CorrectionField field() const;

private:
    int order_;
    std::shared_ptr<const GridLayout> layout_;
    BoundaryData boundary_;
    SourceTraces traces_;
};

/// Validates the available data and builds the chain. Needs b up to order
/// m+1 and source traces with level <= m-1, time derivative <= m.
CorrectionChain build_chain(int m, const GridLayout& layout, const BoundaryData& boundary, const SourceTraces& traces);

}  // namespace explab
