#pragma once

#include <cstddef>
#include <vector>

#include "explab/nodes.hpp"

namespace explab {

inline constexpr int kMaxQuadratureStages = 8;

/// Weights of an exponential quadrature rule in the phi basis:
/// b_i(z) = sum_j beta[i][j-1] * phi_j(z), j = 1..s.
struct WeightSet {
    NodeSet nodes;
    std::vector<std::vector<double>> beta;

    std::size_t stages() const { return nodes.size(); }
    /// b_i(z) for a scalar argument.
    double weight(std::size_t i, double z) const;
    /// b_i(0); these are the weights of the underlying classical quadrature rule.
    double weight_at_zero(std::size_t i) const;
};

/// Solves the Vandermonde system sum_i b_i c_i^{j-1}/(j-1)! = phi_j, j = 1..s.
/// Throws SingularSystem for confluent nodes and InvalidArgument for s > 8.
WeightSet solve_weights(const NodeSet& nodes);

/// True iff sum_i b_i(0) c_i^{s+l} = 1/(s+l+1) for 0 <= l < m (to 1e-12).
bool check_weak_order(const NodeSet& nodes, int m);

}  // namespace explab
