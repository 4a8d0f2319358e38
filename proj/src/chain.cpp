#include "explab/chain.hpp"

#include "explab/elliptic.hpp"

namespace explab {

CorrectionChain::CorrectionChain(int order, GridLayout layout, BoundaryData boundary, SourceTraces traces)
    : order_(order),
      layout_(std::make_shared<const GridLayout>(std::move(layout))),
      boundary_(std::move(boundary)),
      traces_(std::move(traces)) {}

double CorrectionChain::boundary_value(int level, int time_derivative, double t, std::size_t closure_node) const {
    const auto p = layout_->coords(closure_node);
    double b = boundary_(level + time_derivative, t, p);
    for (int j = 0; j < level; ++j) b -= traces_.value(j, level - 1 - j + time_derivative, t, p[0], p[1]);
    return b;
}

std::vector<std::vector<double>> CorrectionChain::levels(double t, int time_derivative) const {
    const GridLayout& g = *layout_;
    std::vector<std::vector<double>> out(static_cast<std::size_t>(order_) + 1);
    const std::vector<double> zero(g.closure_size, 0.0);
    for (int l = order_; l >= 0; --l) {
        std::vector<double> closure(g.closure_size, 0.0);
        for (std::size_t node : g.boundary_nodes) closure[node] = boundary_value(l, time_derivative, t, node);
        const auto& rhs = l == order_ ? zero : out[static_cast<std::size_t>(l) + 1];
        out[static_cast<std::size_t>(l)] = solve_dirichlet_poisson(g, rhs, closure);
    }
    return out;
}

CorrectionField CorrectionChain::field() const {
    auto self = std::make_shared<const CorrectionChain>(*this);
    auto sampler = [self](double t) {
        auto lv = self->levels(t, 0);
        auto dt = self->levels(t, 1);
        return CorrectionField::Sample{std::move(lv[0]), std::move(dt[0]), std::move(lv[1])};
    };
    return CorrectionField(*layout_, boundary_, CorrectionStrategy::chain, std::move(sampler), order_);
}

CorrectionChain build_chain(int m, const GridLayout& layout, const BoundaryData& boundary, const SourceTraces& traces) {
    if (m < 1) throw InvalidArgument("build_chain: order must be at least 1");
    for (std::size_t node : layout.boundary_nodes)
        if (layout.kind_at(node) != BoundaryKind::dirichlet)
            throw InvalidArgument("build_chain: only Dirichlet boundaries are supported");
    if (!boundary.stationary && boundary.max_derivative < m + 1)
        throw InsufficientData("build_chain: boundary data needs time derivatives up to order " + std::to_string(m + 1));
    if (!traces.value || traces.max_level < m - 1 || traces.max_time_derivative < m)
        throw InsufficientData("build_chain: source traces B(D^l f^(r)) needed for l <= " + std::to_string(m - 1) +
                               ", r <= " + std::to_string(m));
    return CorrectionChain(m, layout, boundary, traces);
}

}  // namespace explab
