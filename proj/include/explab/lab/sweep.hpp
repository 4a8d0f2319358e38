#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "explab/lab/problems.hpp"
#include "explab/norms.hpp"

namespace explab::lab {

struct SweepConfig {
    std::string problem = "ex1";
    std::string method = "gauss:2";
    std::string correction;  ///< empty selects the problem default
    std::vector<double> steps;  ///< empty selects the problem's halving ladder
    std::vector<NormKind> norms{NormKind::l2()};
    std::size_t grid = 0;
    std::optional<ReferenceRecipe> reference;
    unsigned parallel = 1;
    std::string cache_dir;
    /// Quasi-uniform random steps with this alpha; each row's step size is then tau_max.
    std::optional<double> variable_alpha;
    std::uint64_t seed = 42;
    bool floor_check = true;

    /// Throws InvalidArgument for fewer than two steps or a non-decreasing ladder.
    void validate() const;
};

/// "0.1,0.05,0.025" or "ladder:<start>,<count>" (halving).
std::vector<double> parse_steps(std::string_view text);
/// Comma-separated NormKind names.
std::vector<NormKind> parse_norms(std::string_view text);

struct ReportRow {
    double step_size = 0.0;
    std::size_t step_count = 0;
    std::vector<double> errors;
    std::vector<std::optional<double>> orders;
    bool failed = false;
    std::string failure;
    /// Some error lies below ten times the estimated floor.
    bool below_floor = false;
};

struct ConvergenceReport {
    std::string problem;
    std::string method;
    std::string correction;
    std::string reference;  ///< recipe label or "exact"
    std::string step_kind = "constant";
    std::size_t n = 0;
    double horizon = 0.0;
    std::vector<NormKind> norms;
    std::vector<ReportRow> rows;
    /// Per-norm error floor (spatial or reference accuracy, and roundoff); empty if not estimated.
    std::vector<double> floor;
    double wall_seconds = 0.0;
};

/// ln(e1/e2) / ln(tau1/tau2).
double observed_order(double e1, double e2, double tau1, double tau2);
/// Fills the order columns from consecutive successful rows.
void compute_orders(ConvergenceReport& report);

ConvergenceReport run_sweep(const ProblemSpec& spec, const SweepConfig& config);
ConvergenceReport run_sweep(const SweepConfig& config);

}  // namespace explab::lab
