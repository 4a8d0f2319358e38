#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "explab/boundary.hpp"
#include "explab/grid.hpp"

namespace explab {

enum class CorrectionStrategy { analytic, harmonic, stationary, frozen_state, chain };

/// Time-dependent extension z of the boundary data into the domain.
///
/// All grid functions are on the layout closure. The correction enters the
/// schemes through z itself and through the source correction k = Dz - dz/dt.
/// Evaluation is pure in t and thread-safe.
class CorrectionField {
public:
    struct Sample {
        std::vector<double> value;
        std::vector<double> time_derivative;
        std::vector<double> operator_image;

        /// k = Dz - dz/dt.
        std::vector<double> source() const;
    };
    using Sampler = std::function<Sample(double t)>;

    CorrectionField(GridLayout layout, BoundaryData boundary, CorrectionStrategy strategy, Sampler sampler,
                    int chain_order = 0);

    CorrectionStrategy strategy() const { return strategy_; }
    int chain_order() const { return chain_order_; }
    std::string label() const;
    const GridLayout& layout() const { return *layout_; }
    const BoundaryData& boundary() const { return boundary_; }

    Sample sample(double t) const;
    std::vector<double> value(double t) const { return sample(t).value; }
    std::vector<double> source(double t) const { return sample(t).source(); }

    /// max |B z(t) - b(t)| over Dirichlet boundary nodes.
    double dirichlet_trace_residual(double t) const;

    /// The frozen-state strategy uses z = current numerical state, extended
    /// by the boundary data; it must be materialized once per step.
    bool depends_on_state() const { return strategy_ == CorrectionStrategy::frozen_state; }
    CorrectionField frozen_at(std::span<const double> state, double t) const;

private:
    std::shared_ptr<const GridLayout> layout_;
    BoundaryData boundary_;
    CorrectionStrategy strategy_;
    Sampler sampler_;
    int chain_order_;
};

/// Correction from closed-form z, dz/dt and Dz. Neumann sides additionally
/// need the normal derivative of z. The trace Bz = b is checked at a few
/// times on construction; a mismatch beyond 1e-10 throws InvalidCorrection.
CorrectionField analytic_correction(const GridLayout& layout, const BoundaryData& boundary, SpaceTimeFunction z,
                                    SpaceTimeFunction dz_dt, SpaceTimeFunction dz,
                                    SpaceTimeFunction normal_derivative = {});

/// Discrete harmonic extension of d^r b/dt^r at time t (closure vector).
/// 1D returns the linear interpolant; 2D solves the five-point Laplace problem.
std::vector<double> harmonic_extension(const BoundaryData& boundary, const GridLayout& layout, double t,
                                       int derivative = 0);

/// z = harmonic extension of b(t), dz/dt = harmonic extension of b'(t),
/// Dz = discrete Laplacian of z (zero up to solver tolerance).
CorrectionField harmonic_correction(const GridLayout& layout, const BoundaryData& boundary);

/// For time-independent data: z = harmonic extension computed once, k = 0.
CorrectionField stationary_correction(const GridLayout& layout, const BoundaryData& boundary);

/// For time-independent data: z_n = u_n, i.e. the numerical state itself
/// extended by the boundary values, frozen over each step.
CorrectionField frozen_state_correction(const GridLayout& layout, const BoundaryData& boundary);

/// Max boundary magnitude of D_h^{l-1}(f + k)(t); vanishes when the
/// compatibility condition B A^{l-1}(f + k) = 0 holds.
double verify_compatibility(const CorrectionField& correction, const SpaceTimeFunction& f, double t, int l);

}  // namespace explab
