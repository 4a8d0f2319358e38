#include "explab/weights.hpp"

#include <cmath>

#include "explab/errors.hpp"
#include "explab/phi.hpp"

namespace explab {

namespace {

long double factorial(int k) {
    long double f = 1.0L;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace

double WeightSet::weight(std::size_t i, double z) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < beta[i].size(); ++j) acc += beta[i][j] * phi(static_cast<int>(j + 1), z);
    return acc;
}

double WeightSet::weight_at_zero(std::size_t i) const {
    long double acc = 0.0L;
    for (std::size_t j = 0; j < beta[i].size(); ++j) acc += beta[i][j] / factorial(static_cast<int>(j + 1));
    return static_cast<double>(acc);
}

WeightSet solve_weights(const NodeSet& nodes) {
    const std::size_t s = nodes.size();
    if (s == 0) throw InvalidArgument("solve_weights: empty node set");
    if (s > static_cast<std::size_t>(kMaxQuadratureStages)) throw InvalidArgument("solve_weights: at most 8 nodes supported");
    for (std::size_t i = 0; i < s; ++i) {
        if (!(nodes.c[i] >= 0.0 && nodes.c[i] <= 1.0)) throw InvalidArgument("solve_weights: nodes must lie in [0,1]");
        for (std::size_t k = 0; k < i; ++k) {
            if (std::abs(nodes.c[i] - nodes.c[k]) < 1e-14) throw SingularSystem("solve_weights: confluent nodes");
        }
        if (i > 0 && nodes.c[i] < nodes.c[i - 1]) throw InvalidArgument("solve_weights: nodes must be increasing");
    }

    // V[j][i] = c_i^j / j!, solve V X = I by Gauss-Jordan in extended precision.
    using Row = std::vector<long double>;
    std::vector<Row> v(s, Row(2 * s, 0.0L));
    for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t i = 0; i < s; ++i)
            v[j][i] = std::pow(static_cast<long double>(nodes.c[i]), static_cast<long double>(j)) / factorial(static_cast<int>(j));
        v[j][s + j] = 1.0L;
    }
    for (std::size_t col = 0; col < s; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < s; ++r)
            if (std::abs(v[r][col]) > std::abs(v[pivot][col])) pivot = r;
        if (std::abs(v[pivot][col]) < 1e-300L) throw SingularSystem("solve_weights: singular Vandermonde system");
        std::swap(v[col], v[pivot]);
        const long double p = v[col][col];
        for (auto& x : v[col]) x /= p;
        for (std::size_t r = 0; r < s; ++r) {
            if (r == col) continue;
            const long double factor = v[r][col];
            if (factor == 0.0L) continue;
            for (std::size_t k = 0; k < 2 * s; ++k) v[r][k] -= factor * v[col][k];
        }
    }

    WeightSet w;
    w.nodes = nodes;
    w.beta.assign(s, std::vector<double>(s));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) w.beta[i][j] = static_cast<double>(v[i][s + j]);
    return w;
}

bool check_weak_order(const NodeSet& nodes, int m) {
    if (m < 0) throw InvalidArgument("check_weak_order: m must be non-negative");
    const WeightSet w = solve_weights(nodes);
    const std::size_t s = nodes.size();
    for (int l = 0; l < m; ++l) {
        const int power = static_cast<int>(s) + l;
        long double acc = 0.0L;
        for (std::size_t i = 0; i < s; ++i)
            acc += static_cast<long double>(w.weight_at_zero(i)) * std::pow(static_cast<long double>(nodes.c[i]), power);
        if (std::abs(acc - 1.0L / (power + 1)) > 1e-12L) return false;
    }
    return true;
}

}  // namespace explab
