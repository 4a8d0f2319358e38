#include "explab/correction.hpp"

#include <algorithm>
#include <cmath>

#include "explab/elliptic.hpp"

namespace explab {

std::vector<double> CorrectionField::Sample::source() const {
    std::vector<double> k(operator_image.size());
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = operator_image[i] - time_derivative[i];
    return k;
}

CorrectionField::CorrectionField(GridLayout layout, BoundaryData boundary, CorrectionStrategy strategy,
                                 Sampler sampler, int chain_order)
    : layout_(std::make_shared<const GridLayout>(std::move(layout))),
      boundary_(std::move(boundary)),
      strategy_(strategy),
      sampler_(std::move(sampler)),
      chain_order_(chain_order) {}

std::string CorrectionField::label() const {
    switch (strategy_) {
        case CorrectionStrategy::analytic: return "analytic";
        case CorrectionStrategy::harmonic: return "harmonic";
        case CorrectionStrategy::stationary: return "stationary";
        case CorrectionStrategy::frozen_state: return "frozen-state";
        case CorrectionStrategy::chain: return "chain:" + std::to_string(chain_order_);
    }
    return "?";
}

CorrectionField::Sample CorrectionField::sample(double t) const {
    if (depends_on_state()) throw InvalidCorrection("frozen-state correction must be materialized with frozen_at()");
    Sample s = sampler_(t);
    const std::size_t n = layout_->closure_size;
    if (s.value.size() != n || s.time_derivative.size() != n || s.operator_image.size() != n)
        throw DimensionMismatch(n, s.value.size());
    return s;
}

double CorrectionField::dirichlet_trace_residual(double t) const {
    const auto z = sample(t).value;
    double worst = 0.0;
    for (std::size_t node : layout_->boundary_nodes) {
        if (layout_->kind_at(node) != BoundaryKind::dirichlet) continue;
        worst = std::max(worst, std::abs(z[node] - boundary_(0, t, layout_->coords(node))));
    }
    return worst;
}

CorrectionField CorrectionField::frozen_at(std::span<const double> state, double t) const {
    const GridLayout& g = *layout_;
    std::vector<double> closure(g.closure_size, 0.0);
    for (std::size_t node : g.boundary_nodes) closure[node] = boundary_(0, t, g.coords(node));
    g.scatter(state, closure);
    auto frozen = std::make_shared<const Sample>(
        Sample{closure, std::vector<double>(g.closure_size, 0.0), closure_laplacian(g, closure)});
    return CorrectionField(g, boundary_, CorrectionStrategy::stationary, [frozen](double) { return *frozen; });
}

CorrectionField analytic_correction(const GridLayout& layout, const BoundaryData& boundary, SpaceTimeFunction z,
                                    SpaceTimeFunction dz_dt, SpaceTimeFunction dz,
                                    SpaceTimeFunction normal_derivative) {
    if (!z || !dz_dt || !dz) throw InvalidCorrection("analytic correction needs z, dz/dt and Dz");
    auto grid = std::make_shared<const GridLayout>(layout);
    auto sampler = [grid, z, dz_dt, dz](double t) {
        const std::size_t n = grid->closure_size;
        CorrectionField::Sample s{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
        for (std::size_t i = 0; i < n; ++i) {
            const auto [x, y] = grid->coords(i);
            s.value[i] = z(t, x, y);
            s.time_derivative[i] = dz_dt(t, x, y);
            s.operator_image[i] = dz(t, x, y);
        }
        return s;
    };

    for (double t : {0.0, 0.25, 0.5, 1.0}) {
        for (std::size_t node : layout.boundary_nodes) {
            const auto p = layout.coords(node);
            const double b = boundary(0, t, p);
            double trace = 0.0;
            if (layout.kind_at(node) == BoundaryKind::dirichlet) {
                trace = z(t, p[0], p[1]);
            } else {
                if (!normal_derivative) throw InvalidCorrection("Neumann side needs the normal derivative of z");
                trace = normal_derivative(t, p[0], p[1]);
            }
            if (std::abs(trace - b) > 1e-10 * std::max(1.0, std::abs(b)))
                throw InvalidCorrection("correction does not reproduce the boundary data at t=" + std::to_string(t));
        }
    }
    return CorrectionField(layout, boundary, CorrectionStrategy::analytic, std::move(sampler));
}

std::vector<double> harmonic_extension(const BoundaryData& boundary, const GridLayout& layout, double t,
                                       int derivative) {
    std::vector<double> closure(layout.closure_size, 0.0);
    for (std::size_t node : layout.boundary_nodes) {
        if (layout.kind_at(node) != BoundaryKind::dirichlet)
            throw InvalidArgument("harmonic extension requires Dirichlet data on every side");
        closure[node] = boundary(derivative, t, layout.coords(node));
    }
    if (layout.spatial_dim == 1) {
        const double left = closure.front();
        const double right = closure.back();
        for (std::size_t i = 1; i <= layout.n; ++i) closure[i] = left + (right - left) * layout.coords(i)[0];
        return closure;
    }
    const std::vector<double> zero(layout.closure_size, 0.0);
    return solve_dirichlet_poisson(layout, zero, closure);
}

CorrectionField harmonic_correction(const GridLayout& layout, const BoundaryData& boundary) {
    auto grid = std::make_shared<const GridLayout>(layout);
    auto compute = [grid, boundary](double t) {
        CorrectionField::Sample s;
        s.value = harmonic_extension(boundary, *grid, t, 0);
        s.time_derivative = boundary.stationary ? std::vector<double>(grid->closure_size, 0.0)
                                                : harmonic_extension(boundary, *grid, t, 1);
        s.operator_image = closure_laplacian(*grid, s.value);
        return s;
    };
    if (boundary.stationary) {
        auto cached = std::make_shared<const CorrectionField::Sample>(compute(0.0));
        return CorrectionField(layout, boundary, CorrectionStrategy::harmonic, [cached](double) { return *cached; });
    }
    if (boundary.max_derivative < 1) throw InsufficientData("harmonic correction needs db/dt for time-dependent data");
    return CorrectionField(layout, boundary, CorrectionStrategy::harmonic, std::move(compute));
}

CorrectionField stationary_correction(const GridLayout& layout, const BoundaryData& boundary) {
    if (!boundary.stationary) throw InvalidArgument("stationary correction requires time-independent boundary data");
    const std::size_t n = layout.closure_size;
    auto cached = std::make_shared<const CorrectionField::Sample>(CorrectionField::Sample{
        harmonic_extension(boundary, layout, 0.0, 0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)});
    return CorrectionField(layout, boundary, CorrectionStrategy::stationary, [cached](double) { return *cached; });
}

CorrectionField frozen_state_correction(const GridLayout& layout, const BoundaryData& boundary) {
    if (!boundary.stationary) throw InvalidArgument("frozen-state correction requires time-independent boundary data");
    for (std::size_t node : layout.boundary_nodes)
        if (layout.kind_at(node) != BoundaryKind::dirichlet)
            throw InvalidArgument("frozen-state correction requires Dirichlet data on every side");
    return CorrectionField(layout, boundary, CorrectionStrategy::frozen_state,
                           [](double) -> CorrectionField::Sample { throw InvalidCorrection("frozen-state"); });
}

double verify_compatibility(const CorrectionField& correction, const SpaceTimeFunction& f, double t, int l) {
    if (l < 1) throw InvalidArgument("verify_compatibility: l must be at least 1");
    const GridLayout& g = correction.layout();
    for (std::size_t node : g.boundary_nodes)
        if (g.kind_at(node) != BoundaryKind::dirichlet)
            throw InvalidArgument("verify_compatibility: only Dirichlet boundaries are supported");

    std::vector<double> h = correction.source(t);
    for (std::size_t i = 0; i < g.closure_size; ++i) {
        const auto [x, y] = g.coords(i);
        h[i] += f(t, x, y);
    }
    for (int level = 1; level < l; ++level) h = closure_laplacian(g, h, true);

    double worst = 0.0;
    for (std::size_t node : g.boundary_nodes) worst = std::max(worst, std::abs(h[node]));
    return worst;
}

}  // namespace explab
