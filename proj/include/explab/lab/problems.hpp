#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "explab/chain.hpp"
#include "explab/correction.hpp"
#include "explab/discrete_operator.hpp"
#include "explab/integrate.hpp"
#include "explab/problem.hpp"

namespace explab::lab {

/// Fine-step run that stands in for an exact solution.
struct ReferenceRecipe {
    std::string method;  ///< registry name, or "rk4"
    double tau = 0.0;

    std::string label() const;
    /// "method:step", step given as a decimal or as 1/N.
    static ReferenceRecipe parse(std::string_view text);
};

struct ProblemSpec {
    explicit ProblemSpec(DiscreteOperator op) : op(std::move(op)) {}

    std::string id;
    std::string title;
    int spatial_dim = 1;
    std::size_t n = 0;
    BoundaryKind right = BoundaryKind::dirichlet;
    double horizon = 1.0;

    DiscreteOperator op;
    BoundaryData boundary;
    SpaceTimeFunction initial;
    /// Linear problems carry a source; semilinear ones a nonlinearity.
    SpaceTimeFunction source;
    Nonlinearity nonlinearity;
    std::optional<SourceTraces> traces;

    SpaceTimeFunction exact;
    std::optional<ReferenceRecipe> reference;

    std::vector<std::string> corrections;
    std::string default_correction;
    /// Halving ladder used when no steps are given.
    double ladder_start = 0.1;
    int ladder_count = 5;

    bool linear() const { return static_cast<bool>(source); }
    const GridLayout& layout() const { return op.layout(); }
};

/// ex1..ex5. n = 0 selects the default grid (512 for ex1-ex3, 256 for ex4, 64 per dimension for ex5).
ProblemSpec build_problem(std::string_view id, std::size_t n = 0);
std::vector<std::string> problem_ids();

/// analytic:<id>, harmonic, stationary, frozen-state, chain:<m>.
CorrectionField make_correction(const ProblemSpec& spec, std::string_view name);

/// Initial state on the unknowns.
std::vector<double> initial_state(const ProblemSpec& spec);
/// Exact solution on the unknowns; requires spec.exact.
std::vector<double> exact_state(const ProblemSpec& spec, double t);

/// Integrates the problem with a registry method, or with classical RK4 for "rk4".
Trajectory run_problem(const ProblemSpec& spec, const CorrectionField& correction, std::string_view method,
                       const StepSequence& steps, const IntegrateOptions& options = {});

}  // namespace explab::lab
