#pragma once

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "explab/phi.hpp"
#include "explab/problem.hpp"
#include "explab/tableau.hpp"
#include "explab/weights.hpp"

namespace explab {

/// Spectral symbols of every operator a method needs for one step size.
struct StepSymbols {
    std::vector<double> propagator;                    ///< exp(tau lambda)
    std::vector<std::vector<double>> stage_propagator;  ///< exp(c_i tau lambda)
    std::vector<std::vector<std::vector<double>>> a;    ///< a_ij(tau lambda); empty when zero
    std::vector<std::vector<double>> b;                 ///< b_i(tau lambda); empty when zero
};

StepSymbols build_symbols(const Method& method, std::span<const double> eigenvalues, double tau);

/// Per-run memo of StepSymbols keyed by the exact step size.
class SymbolCache {
public:
    SymbolCache(const Method& method, const DiscreteOperator& op, bool enabled = true);

    const StepSymbols& get(double tau);
    std::size_t size() const { return cache_.size(); }

private:
    const Method* method_;
    DiscreteOperator op_;
    bool enabled_;
    std::map<double, std::unique_ptr<StepSymbols>> cache_;
    std::unique_ptr<StepSymbols> scratch_;
};

/// One step of a method in u-variables. Quadrature rules treat the
/// nonlinearity as if it did not depend on u (they are meant for linear
/// problems); tableaux use the full stage recursion with the c_i-scaled
/// stage propagators exp(c_i tau A).
std::vector<double> advance(std::span<const double> u, double t, double tau, const SemilinearProblem& problem,
                            const Method& method, const StepSymbols& symbols);

/// u_{n+1} = e^{tau A}(u_n - z(t_n)) + z(t_{n+1}) + tau sum_i b_i(tau A)(f + k)(t_n + c_i tau).
std::vector<double> linear_step(std::span<const double> u, double t, double tau, const LinearProblem& problem,
                                const WeightSet& weights, const PhiEvaluator& phi);

/// Explicit exponential Runge-Kutta step in u-variables.
std::vector<double> semilinear_step(std::span<const double> u, double t, double tau, const SemilinearProblem& problem,
                                    const ExponentialTableau& tableau, const PhiEvaluator& phi);

/// The same schemes written for w = u - z, evaluated term by term with
/// PhiEvaluator::apply. Used to cross-check the u-forms.
std::vector<double> linear_step_w(std::span<const double> w, double t, double tau, const LinearProblem& problem,
                                  const WeightSet& weights, const PhiEvaluator& phi);
std::vector<double> semilinear_step_w(std::span<const double> w, double t, double tau,
                                      const SemilinearProblem& problem, const ExponentialTableau& tableau,
                                      const PhiEvaluator& phi);

}  // namespace explab
