#include "explab/integrate.hpp"

#include <algorithm>
#include <cmath>

#include "explab/errors.hpp"
#include "explab/steppers.hpp"

namespace explab {

Trajectory integrate(const SemilinearProblem& problem, const Method& method, const StepSequence& steps,
                     const IntegrateOptions& options) {
    if (problem.u0.size() != problem.op.dimension()) throw DimensionMismatch(problem.op.dimension(), problem.u0.size());
    if (const auto* t = std::get_if<ExponentialTableau>(&method)) t->validate();

    SymbolCache cache(method, problem.op, options.cache_symbols);
    Trajectory out;
    std::vector<double> u = problem.u0;
    double t = 0.0;
    for (std::size_t n = 0; n < steps.size(); ++n) {
        const double tau = steps[n];
        u = advance(u, t, tau, problem, method, cache.get(tau));
        t += tau;
        if (!std::all_of(u.begin(), u.end(), [](double x) { return std::isfinite(x); })) throw DivergenceError(n);
        if (options.snapshot_every != 0 && (n + 1) % options.snapshot_every == 0) out.snapshots.emplace_back(t, u);
    }
    out.final_state = std::move(u);
    out.final_time = t;
    out.steps = steps.size();
    return out;
}

Trajectory integrate(const LinearProblem& problem, const Method& method, const StepSequence& steps,
                     const IntegrateOptions& options) {
    return integrate(as_semilinear(problem), method, steps, options);
}

}  // namespace explab
