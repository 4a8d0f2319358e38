#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "explab/problem.hpp"
#include "explab/step_sequence.hpp"
#include "explab/tableau.hpp"

namespace explab {

struct IntegrateOptions {
    /// Record the state every k steps (0 disables snapshots).
    std::size_t snapshot_every = 0;
    /// Reuse operator symbols across steps of equal size.
    bool cache_symbols = true;
};

struct Trajectory {
    std::vector<double> final_state;
    double final_time = 0.0;
    std::size_t steps = 0;
    std::vector<std::pair<double, std::vector<double>>> snapshots;
};

/// Throws DivergenceError with the step index as soon as the state turns non-finite.
Trajectory integrate(const SemilinearProblem& problem, const Method& method, const StepSequence& steps,
                     const IntegrateOptions& options = {});
Trajectory integrate(const LinearProblem& problem, const Method& method, const StepSequence& steps,
                     const IntegrateOptions& options = {});

}  // namespace explab
