#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace explab {

enum class StepGenerator { constant, quasi_uniform, custom };

/// Positive step sizes summing to the horizon T.
class StepSequence {
public:
    /// N equal steps; T/tau must be an integer to 1e-9 relative.
    static StepSequence constant(double horizon, double tau);
    /// Random steps in [alpha*tau_max, tau_max] summing exactly to T.
    static StepSequence quasi_uniform(double horizon, double tau_max, double alpha, std::uint64_t seed);
    static StepSequence custom(std::vector<double> steps);

    std::span<const double> steps() const { return steps_; }
    std::size_t size() const { return steps_.size(); }
    double operator[](std::size_t n) const { return steps_[n]; }
    double horizon() const { return horizon_; }
    StepGenerator generator() const { return generator_; }

    /// Largest step, or the nominal tau_max for quasi-uniform sequences.
    double tau_max() const { return tau_max_; }
    /// Lower ratio bound alpha with alpha * tau_max <= tau_n (1 for constant steps).
    double alpha() const { return alpha_; }
    /// max_n tau_n / tau_{n+1}.
    double kappa() const;

private:
    StepSequence() = default;

    std::vector<double> steps_;
    double horizon_ = 0.0;
    StepGenerator generator_ = StepGenerator::custom;
    double tau_max_ = 0.0;
    double alpha_ = 1.0;
};

}  // namespace explab
