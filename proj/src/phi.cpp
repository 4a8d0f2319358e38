#include "explab/phi.hpp"

#include <array>
#include <cmath>

#include "explab/errors.hpp"

namespace explab {

namespace {

constexpr int kTableSize = 64;

const std::array<double, kTableSize>& inverse_factorials() {
    static const std::array<double, kTableSize> table = [] {
        std::array<double, kTableSize> t{};
        t[0] = 1.0;
        for (int k = 1; k < kTableSize; ++k) t[k] = t[k - 1] / k;
        return t;
    }();
    return table;
}

double phi_series(int j, double z) {
    double term = inverse_factorials()[j];
    double sum = term;
    for (int n = 1; n < 200; ++n) {
        term *= z / (n + j);
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Below this magnitude the recurrence for phi_j cancels badly; the loss grows
// with j, so the series branch widens with the order.
double series_radius(int j) { return j <= 2 ? 1.0 : 1.0 + 1.5 * (j - 2); }

}  // namespace

double phi(int j, double z) {
    if (j < 0 || j >= kTableSize - 2) throw InvalidArgument("phi: order out of range");
    if (std::abs(z) < series_radius(j)) return phi_series(j, z);
    double value = std::exp(z);
    const auto& inv = inverse_factorials();
    for (int k = 1; k <= j; ++k) value = (value - inv[k - 1]) / z;
    return value;
}

void phi_all(double z, std::span<double> out) {
    if (out.empty()) return;
    if (out.size() >= kTableSize - 2) throw InvalidArgument("phi_all: order out of range");
    const auto& inv = inverse_factorials();
    out[0] = std::exp(z);
    for (std::size_t k = 1; k < out.size(); ++k) {
        const int j = static_cast<int>(k);
        out[k] = std::abs(z) < series_radius(j) ? phi_series(j, z) : (out[k - 1] - inv[k - 1]) / z;
    }
}

PhiEvaluator::PhiEvaluator(DiscreteOperator op, int max_order) : op_(std::move(op)), max_order_(max_order) {
    if (max_order < 4 || max_order > kMaxPhiOrder) throw InvalidArgument("PhiEvaluator: max_order must be in [4, 8]");
}

std::vector<double> PhiEvaluator::symbol(int j, double tau) const {
    if (j < 0 || j > max_order_) throw InvalidArgument("phi order exceeds evaluator max_order");
    const auto lambda = op_.eigenvalues();
    std::vector<double> s(lambda.size());
    for (std::size_t k = 0; k < lambda.size(); ++k) s[k] = phi(j, tau * lambda[k]);
    return s;
}

void PhiEvaluator::apply_symbol(std::span<const double> symbol, std::span<const double> v, std::span<double> out) const {
    const std::size_t n = dimension();
    if (symbol.size() != n) throw DimensionMismatch(n, symbol.size());
    std::vector<double> c(n);
    op_.forward(v, c);
    for (std::size_t k = 0; k < n; ++k) c[k] *= symbol[k];
    op_.inverse(c, out);
}

std::vector<double> PhiEvaluator::apply(int j, double tau, std::span<const double> v) const {
    if (!(tau > 0.0)) throw InvalidArgument("phi_apply: tau must be positive");
    if (v.size() != dimension()) throw DimensionMismatch(dimension(), v.size());
    std::vector<double> out(dimension());
    apply_symbol(symbol(j, tau), v, out);
    return out;
}

}  // namespace explab
