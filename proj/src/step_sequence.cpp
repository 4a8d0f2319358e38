#include "explab/step_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "explab/errors.hpp"

namespace explab {

StepSequence StepSequence::constant(double horizon, double tau) {
    if (!(tau > 0.0) || !(horizon >= 0.0)) throw InvalidArgument("step sequence: tau must be positive, T nonnegative");
    const double ratio = horizon / tau;
    const double count = std::round(ratio);
    if (std::abs(ratio - count) > 1e-9 * std::max(1.0, ratio))
        throw InvalidArgument("step sequence: T is not an integer multiple of tau");
    StepSequence seq;
    seq.steps_.assign(static_cast<std::size_t>(count), tau);
    seq.horizon_ = horizon;
    seq.generator_ = StepGenerator::constant;
    seq.tau_max_ = tau;
    return seq;
}

StepSequence StepSequence::quasi_uniform(double horizon, double tau_max, double alpha, std::uint64_t seed) {
    if (!(tau_max > 0.0) || !(horizon > 0.0)) throw InvalidArgument("step sequence: tau and T must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("step sequence: alpha must lie in (0, 1]");
    // Draw from a slightly raised lower bound so that the final rescaling,
    // which shrinks every step by at most T/(T + tau_max), keeps tau_n >= alpha tau_max.
    const double low = std::min(1.0, alpha * (1.0 + tau_max / horizon));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> draw(low * tau_max, tau_max);

    std::vector<double> steps;
    double sum = 0.0;
    while (sum < horizon) {
        steps.push_back(low == 1.0 ? tau_max : draw(rng));
        sum += steps.back();
    }
    const double scale = horizon / sum;
    for (double& s : steps) s *= scale;

    StepSequence seq;
    seq.steps_ = std::move(steps);
    seq.horizon_ = horizon;
    seq.generator_ = StepGenerator::quasi_uniform;
    seq.tau_max_ = tau_max;
    seq.alpha_ = alpha;
    return seq;
}

StepSequence StepSequence::custom(std::vector<double> steps) {
    for (double s : steps)
        if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("step sequence: steps must be positive");
    StepSequence seq;
    seq.horizon_ = std::accumulate(steps.begin(), steps.end(), 0.0);
    seq.tau_max_ = steps.empty() ? 0.0 : *std::max_element(steps.begin(), steps.end());
    if (!steps.empty()) seq.alpha_ = *std::min_element(steps.begin(), steps.end()) / seq.tau_max_;
    seq.steps_ = std::move(steps);
    seq.generator_ = StepGenerator::custom;
    return seq;
}

double StepSequence::kappa() const {
    double k = 1.0;
    for (std::size_t n = 0; n + 1 < steps_.size(); ++n) k = std::max(k, steps_[n] / steps_[n + 1]);
    return k;
}

}  // namespace explab
