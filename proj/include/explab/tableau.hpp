#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "explab/weights.hpp"

namespace explab {

struct PhiTerm {
    double coefficient = 0.0;
    int order = 0;

    bool operator==(const PhiTerm&) const = default;
};

/// sum_k coefficient_k * phi_{order_k}(scale * z). An empty combination is zero.
struct PhiCombination {
    double scale = 1.0;
    std::vector<PhiTerm> terms;

    bool empty() const { return terms.empty(); }
    double evaluate(double z) const;
    double at_zero() const;
    int max_order() const;

    bool operator==(const PhiCombination&) const = default;
};

/// Explicit exponential Runge-Kutta method in the phi basis. The
/// coefficients of stage i are combinations of phi_k(c_i tau A); the weights
/// are combinations of phi_k(tau A).
struct ExponentialTableau {
    std::string name;
    std::vector<double> c;
    std::vector<std::vector<PhiCombination>> a;  ///< a[i][j], j < i
    std::vector<PhiCombination> b;

    std::size_t stages() const { return c.size(); }
    int max_order() const;
    /// Throws InvalidArgument unless a is strictly lower triangular and sized consistently.
    void validate() const;
};

ExponentialTableau exponential_euler();
ExponentialTableau strehmel_weiner();
ExponentialTableau krogstad();

using Method = std::variant<ExponentialTableau, WeightSet>;

/// euler, strehmel-weiner, krogstad, gauss:<s>, radau:<s>, lobatto:<s>;
/// gauss-quadrature(s) and radau-quadrature(s) are accepted as aliases.
Method registry_get(std::string_view name);
std::string method_label(const Method& method);

}  // namespace explab
