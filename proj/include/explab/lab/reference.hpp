#pragma once

#include <optional>
#include <string>
#include <vector>

#include "explab/lab/problems.hpp"

namespace explab::lab {

/// Cache key for a reference run: problem, grid, horizon, correction and recipe.
std::string reference_key(const ProblemSpec& spec, const std::string& correction, const ReferenceRecipe& recipe);

/// Final state of the reference run (or the exact solution when the problem
/// has one and no recipe is forced). With a non-empty cache_dir results are
/// stored on disk under a hash of reference_key and reused.
std::vector<double> reference_solution(const ProblemSpec& spec, const CorrectionField& correction,
                                       const std::string& correction_name,
                                       const std::optional<ReferenceRecipe>& recipe = std::nullopt,
                                       const std::string& cache_dir = {});

/// The recipe used for a spec, or nullopt when the exact solution is used.
std::optional<ReferenceRecipe> effective_recipe(const ProblemSpec& spec, const std::optional<ReferenceRecipe>& forced);

}  // namespace explab::lab
