#include "explab/problem.hpp"

#include <algorithm>
#include <cmath>

namespace explab {

std::vector<double> sample_on_state(const SpaceTimeFunction& f, double t, const GridLayout& layout) {
    std::vector<double> out(layout.state_size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        const auto [x, y] = layout.coords(layout.unknowns[k]);
        out[k] = f(t, x, y);
    }
    return out;
}

SemilinearProblem as_semilinear(const LinearProblem& problem) {
    auto source = problem.source;
    Nonlinearity f = [source](double t, const GridLayout& layout, std::span<const double>, std::span<double> out) {
        if (!source) {
            std::fill(out.begin(), out.end(), 0.0);
            return;
        }
        for (std::size_t k = 0; k < out.size(); ++k) {
            const auto [x, y] = layout.coords(layout.unknowns[k]);
            out[k] = source(t, x, y);
        }
    };
    return {problem.op, std::move(f), problem.correction, problem.u0, problem.horizon};
}

double initial_trace_mismatch(const SpaceTimeFunction& u0, const GridLayout& layout, const BoundaryData& boundary) {
    double worst = 0.0;
    for (std::size_t node : layout.boundary_nodes) {
        if (layout.kind_at(node) != BoundaryKind::dirichlet) continue;
        const auto p = layout.coords(node);
        worst = std::max(worst, std::abs(u0(0.0, p[0], p[1]) - boundary(0, 0.0, p)));
    }
    return worst;
}

}  // namespace explab
