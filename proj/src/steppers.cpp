#include "explab/steppers.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "explab/errors.hpp"

namespace explab {

namespace {

struct ScaledPhi {
    double scale;
    std::vector<std::vector<double>> values;  // values[j][k] = phi_j(scale tau lambda_k)
};

std::vector<double> combine(const PhiCombination& comb, const std::vector<ScaledPhi>& table) {
    if (comb.empty()) return {};
    const auto it = std::find_if(table.begin(), table.end(), [&](const ScaledPhi& s) { return s.scale == comb.scale; });
    std::vector<double> out(it->values[0].size(), 0.0);
    for (const auto& term : comb.terms) {
        const auto& v = it->values[static_cast<std::size_t>(term.order)];
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += term.coefficient * v[k];
    }
    return out;
}

std::vector<ScaledPhi> tabulate(const std::vector<double>& scales, int max_order, std::span<const double> lambda,
                                double tau) {
    std::vector<ScaledPhi> table;
    std::vector<double> row(static_cast<std::size_t>(max_order) + 1);
    for (double scale : scales) {
        if (std::any_of(table.begin(), table.end(), [&](const ScaledPhi& s) { return s.scale == scale; })) continue;
        ScaledPhi entry{scale, std::vector<std::vector<double>>(row.size(), std::vector<double>(lambda.size()))};
        for (std::size_t k = 0; k < lambda.size(); ++k) {
            phi_all(scale * tau * lambda[k], row);
            for (std::size_t j = 0; j < row.size(); ++j) entry.values[j][k] = row[j];
        }
        table.push_back(std::move(entry));
    }
    return table;
}

// Correction samples within one step, memoized by time.
class StepSamples {
public:
    StepSamples(const CorrectionField& correction) : correction_(correction) {}

    const CorrectionField::Sample& at(double t) {
        for (const auto& [time, s] : memo_)
            if (time == t) return s;
        memo_.emplace_back(t, correction_.sample(t));
        return memo_.back().second;
    }

private:
    const CorrectionField& correction_;
    std::vector<std::pair<double, CorrectionField::Sample>> memo_;
};

void add_restricted(const GridLayout& g, std::span<const double> closure, std::span<double> state) {
    for (std::size_t k = 0; k < state.size(); ++k) state[k] += closure[g.unknowns[k]];
}

std::vector<double> restricted_source(const GridLayout& g, const CorrectionField::Sample& s) {
    std::vector<double> k(g.state_size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        const std::size_t c = g.unknowns[i];
        k[i] = s.operator_image[c] - s.time_derivative[c];
    }
    return k;
}

void check_step(std::span<const double> u, double tau, const DiscreteOperator& op) {
    if (!(tau > 0.0)) throw InvalidArgument("step size must be positive");
    if (u.size() != op.dimension()) throw DimensionMismatch(op.dimension(), u.size());
}

}  // namespace

StepSymbols build_symbols(const Method& method, std::span<const double> lambda, double tau) {
    StepSymbols sym;
    if (const auto* w = std::get_if<WeightSet>(&method)) {
        const int s = static_cast<int>(w->stages());
        auto table = tabulate({1.0}, s, lambda, tau);
        const auto& phis = table[0].values;
        sym.propagator = phis[0];
        sym.b.assign(w->stages(), std::vector<double>(lambda.size(), 0.0));
        for (std::size_t i = 0; i < w->stages(); ++i)
            for (std::size_t j = 0; j < w->beta[i].size(); ++j)
                for (std::size_t k = 0; k < lambda.size(); ++k) sym.b[i][k] += w->beta[i][j] * phis[j + 1][k];
        return sym;
    }

    const auto& t = std::get<ExponentialTableau>(method);
    std::vector<double> scales = t.c;
    scales.push_back(1.0);
    const auto table = tabulate(scales, std::max(1, t.max_order()), lambda, tau);
    auto propagator_for = [&](double scale) {
        return std::find_if(table.begin(), table.end(), [&](const ScaledPhi& s) { return s.scale == scale; })->values[0];
    };
    sym.propagator = propagator_for(1.0);
    for (std::size_t i = 0; i < t.stages(); ++i) {
        sym.stage_propagator.push_back(propagator_for(t.c[i]));
        std::vector<std::vector<double>> row;
        for (const auto& comb : t.a[i]) row.push_back(combine(comb, table));
        sym.a.push_back(std::move(row));
        sym.b.push_back(combine(t.b[i], table));
    }
    return sym;
}

SymbolCache::SymbolCache(const Method& method, const DiscreteOperator& op, bool enabled)
    : method_(&method), op_(op), enabled_(enabled) {}

const StepSymbols& SymbolCache::get(double tau) {
    if (!enabled_) {
        scratch_ = std::make_unique<StepSymbols>(build_symbols(*method_, op_.eigenvalues(), tau));
        return *scratch_;
    }
    auto it = cache_.find(tau);
    if (it == cache_.end())
        it = cache_.emplace(tau, std::make_unique<StepSymbols>(build_symbols(*method_, op_.eigenvalues(), tau))).first;
    return *it->second;
}

std::vector<double> advance(std::span<const double> u, double t, double tau, const SemilinearProblem& problem,
                            const Method& method, const StepSymbols& sym) {
    const DiscreteOperator& op = problem.op;
    check_step(u, tau, op);
    const GridLayout& g = op.layout();
    const std::size_t n = op.dimension();

    std::optional<CorrectionField> frozen;
    if (problem.correction.depends_on_state()) frozen = problem.correction.frozen_at(u, t);
    StepSamples samples(frozen ? *frozen : problem.correction);

    std::vector<double> w(u.begin(), u.end());
    {
        const auto& zn = samples.at(t).value;
        for (std::size_t k = 0; k < n; ++k) w[k] -= zn[g.unknowns[k]];
    }
    std::vector<double> w_hat(n);
    op.forward(w, w_hat);

    const ExponentialTableau* tableau = std::get_if<ExponentialTableau>(&method);
    const std::vector<double>* nodes = tableau != nullptr ? &tableau->c : &std::get<WeightSet>(method).nodes.c;
    const std::size_t s = nodes->size();

    std::vector<std::vector<double>> g_hat(s, std::vector<double>(n));
    std::vector<double> stage(n);
    std::vector<double> acc(n);
    std::vector<double> f_val(n);
    for (std::size_t i = 0; i < s; ++i) {
        const double ti = t + (*nodes)[i] * tau;
        const auto& zi = samples.at(ti);
        if (tableau == nullptr) {
            std::copy(u.begin(), u.end(), stage.begin());
        } else {
            const bool trivial = (*nodes)[i] == 0.0 &&
                                 std::all_of(sym.a[i].begin(), sym.a[i].end(), [](const auto& v) { return v.empty(); });
            if (trivial) {
                std::copy(u.begin(), u.end(), stage.begin());
            } else {
                const auto& e = sym.stage_propagator[i];
                for (std::size_t k = 0; k < n; ++k) acc[k] = e[k] * w_hat[k];
                for (std::size_t j = 0; j < i; ++j) {
                    const auto& a = sym.a[i][j];
                    if (a.empty()) continue;
                    for (std::size_t k = 0; k < n; ++k) acc[k] += tau * a[k] * g_hat[j][k];
                }
                op.inverse(acc, stage);
                add_restricted(g, zi.value, stage);
            }
        }
        problem.nonlinearity(ti, g, stage, f_val);
        auto gi = restricted_source(g, zi);
        for (std::size_t k = 0; k < n; ++k) gi[k] += f_val[k];
        op.forward(gi, g_hat[i]);
    }

    for (std::size_t k = 0; k < n; ++k) acc[k] = sym.propagator[k] * w_hat[k];
    for (std::size_t i = 0; i < s; ++i) {
        const auto& b = sym.b[i];
        if (b.empty()) continue;
        for (std::size_t k = 0; k < n; ++k) acc[k] += tau * b[k] * g_hat[i][k];
    }
    std::vector<double> next(n);
    op.inverse(acc, next);
    add_restricted(g, samples.at(t + tau).value, next);
    return next;
}

std::vector<double> linear_step(std::span<const double> u, double t, double tau, const LinearProblem& problem,
                                const WeightSet& weights, const PhiEvaluator& phi) {
    check_step(u, tau, problem.op);
    const Method method = weights;
    return advance(u, t, tau, as_semilinear(problem), method, build_symbols(method, phi.op().eigenvalues(), tau));
}

std::vector<double> semilinear_step(std::span<const double> u, double t, double tau, const SemilinearProblem& problem,
                                    const ExponentialTableau& tableau, const PhiEvaluator& phi) {
    check_step(u, tau, problem.op);
    tableau.validate();
    const Method method = tableau;
    return advance(u, t, tau, problem, method, build_symbols(method, phi.op().eigenvalues(), tau));
}

std::vector<double> linear_step_w(std::span<const double> w, double t, double tau, const LinearProblem& problem,
                                  const WeightSet& weights, const PhiEvaluator& phi) {
    check_step(w, tau, problem.op);
    const GridLayout& g = problem.op.layout();
    auto next = phi.apply(0, tau, w);
    for (std::size_t i = 0; i < weights.stages(); ++i) {
        const double ti = t + weights.nodes.c[i] * tau;
        auto gi = problem.correction.source(ti);
        auto gs = g.restrict_to_state(gi);
        if (problem.source) {
            const auto f = sample_on_state(problem.source, ti, g);
            for (std::size_t k = 0; k < gs.size(); ++k) gs[k] += f[k];
        }
        for (std::size_t j = 0; j < weights.beta[i].size(); ++j) {
            const auto term = phi.apply(static_cast<int>(j) + 1, tau, gs);
            for (std::size_t k = 0; k < next.size(); ++k) next[k] += tau * weights.beta[i][j] * term[k];
        }
    }
    return next;
}

std::vector<double> semilinear_step_w(std::span<const double> w, double t, double tau,
                                      const SemilinearProblem& problem, const ExponentialTableau& tableau,
                                      const PhiEvaluator& phi) {
    check_step(w, tau, problem.op);
    tableau.validate();
    const GridLayout& g = problem.op.layout();
    const std::size_t n = w.size();

    auto apply_comb = [&](const PhiCombination& comb, std::span<const double> v, std::vector<double>& out) {
        for (const auto& term : comb.terms) {
            const auto r = phi.apply(term.order, comb.scale * tau, v);
            for (std::size_t k = 0; k < n; ++k) out[k] += tau * term.coefficient * r[k];
        }
    };

    std::vector<std::vector<double>> G;
    for (std::size_t i = 0; i < tableau.stages(); ++i) {
        const double ci = tableau.c[i];
        const double ti = t + ci * tau;
        std::vector<double> W = ci == 0.0 ? std::vector<double>(w.begin(), w.end()) : phi.apply(0, ci * tau, w);
        for (std::size_t j = 0; j < i; ++j) apply_comb(tableau.a[i][j], G[j], W);

        const auto zi = g.restrict_to_state(problem.correction.value(ti));
        std::vector<double> U(n);
        for (std::size_t k = 0; k < n; ++k) U[k] = W[k] + zi[k];
        std::vector<double> f(n);
        problem.nonlinearity(ti, g, U, f);
        auto gi = g.restrict_to_state(problem.correction.source(ti));
        for (std::size_t k = 0; k < n; ++k) gi[k] += f[k];
        G.push_back(std::move(gi));
    }
    auto next = phi.apply(0, tau, w);
    for (std::size_t i = 0; i < tableau.stages(); ++i) apply_comb(tableau.b[i], G[i], next);
    return next;
}

}  // namespace explab
