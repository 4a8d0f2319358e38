#pragma once

#include <span>
#include <vector>

#include "explab/discrete_operator.hpp"

namespace explab {

/// Highest phi index with guaranteed accuracy.
inline constexpr int kMaxPhiOrder = 8;

/// phi_j(z): phi_0 = exp, phi_j(z) = (phi_{j-1}(z) - 1/(j-1)!) / z, phi_j(0) = 1/j!.
/// Uses the Taylor series sum_n z^n/(n+j)! near the origin and the recurrence elsewhere.
double phi(int j, double z);

/// phi_0(z), ..., phi_{out.size()-1}(z) in one pass.
void phi_all(double z, std::span<double> out);

/// Evaluates phi_j(tau A) on vectors through the spectral decomposition of A.
class PhiEvaluator {
public:
    explicit PhiEvaluator(DiscreteOperator op, int max_order = kMaxPhiOrder);

    const DiscreteOperator& op() const { return op_; }
    int max_order() const { return max_order_; }
    std::size_t dimension() const { return op_.dimension(); }

    /// phi_j(tau A) v; j = 0 is the semigroup action exp(tau A) v.
    std::vector<double> apply(int j, double tau, std::span<const double> v) const;

    /// Spectral symbol phi_j(tau * lambda_k) for every eigenvalue.
    std::vector<double> symbol(int j, double tau) const;

    /// out = inverse(symbol .* forward(v)).
    void apply_symbol(std::span<const double> symbol, std::span<const double> v, std::span<double> out) const;

private:
    DiscreteOperator op_;
    int max_order_;
};

}  // namespace explab
