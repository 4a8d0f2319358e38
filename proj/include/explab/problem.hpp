#pragma once

#include <functional>
#include <span>
#include <vector>

#include "explab/boundary.hpp"
#include "explab/correction.hpp"
#include "explab/discrete_operator.hpp"

namespace explab {

/// du/dt = Du + f(t) with Bu = b(t).
struct LinearProblem {
    DiscreteOperator op;
    SpaceTimeFunction source;
    CorrectionField correction;
    std::vector<double> u0;  ///< state vector (unknowns only)
    double horizon = 1.0;
};

/// Pointwise nonlinearity: out = f(t, u) on the state vector.
using Nonlinearity =
    std::function<void(double t, const GridLayout& layout, std::span<const double> u, std::span<double> out)>;

/// du/dt = Du + f(t, u) with Bu = b(t).
struct SemilinearProblem {
    DiscreteOperator op;
    Nonlinearity nonlinearity;
    CorrectionField correction;
    std::vector<double> u0;
    double horizon = 1.0;
};

/// The linear problem with its source viewed as a state-independent nonlinearity.
SemilinearProblem as_semilinear(const LinearProblem& problem);

/// Source sampled on the unknowns.
std::vector<double> sample_on_state(const SpaceTimeFunction& f, double t, const GridLayout& layout);

/// Largest |u0(x) - b(0)| over Dirichlet boundary nodes, for a closed-form u0.
double initial_trace_mismatch(const SpaceTimeFunction& u0, const GridLayout& layout, const BoundaryData& boundary);

}  // namespace explab
