#include "explab/lab/problems.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "explab/errors.hpp"

namespace explab::lab {

namespace {

using std::numbers::pi;

double parse_double(std::string_view text, std::string_view what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw InvalidArgument("cannot parse " + std::string(what) + ": '" + std::string(text) + "'");
    return v;
}

// d^r/dt^r of c * exp(rate t).
double exp_derivative(double c, double rate, int r, double t) { return c * std::pow(rate, r) * std::exp(rate * t); }

ProblemSpec make_ex1(std::size_t n) {
    ProblemSpec s(build_laplacian_1d(Grid1D{n}));
    s.id = "ex1";
    s.title = "linear, time-dependent Dirichlet data";
    s.n = n;
    s.horizon = 1.0;
    s.boundary = {[](int r, double t, double x, double) {
                      const double e = std::exp(t);
                      if (r == 0) return x < 0.5 ? 1.0 - e : 1.0 + e;
                      return x < 0.5 ? -e : e;
                  },
                  16, false};
    s.initial = [](double, double x, double) { return x * x + x; };
    s.source = [](double t, double x, double) { return (x * x + x - 3.0) * std::exp(t); };
    s.traces = SourceTraces{[](int level, int, double t, double x, double) {
                                if (level == 0) return (x * x + x - 3.0) * std::exp(t);
                                return level == 1 ? 2.0 * std::exp(t) : 0.0;
                            },
                            15, 15};
    s.exact = [](double t, double x, double) { return 1.0 + (x * x + x - 1.0) * std::exp(t); };
    s.corrections = {"analytic:affine", "harmonic", "chain:1", "chain:2"};
    s.default_correction = "analytic:affine";
    s.ladder_start = 0.1;
    return s;
}

ProblemSpec make_ex2(std::size_t n) {
    ProblemSpec s(build_laplacian_1d(Grid1D{n}));
    s.id = "ex2";
    s.title = "linear, time-invariant Dirichlet data";
    s.n = n;
    s.horizon = 1.0;
    s.boundary = {[](int r, double, double x, double) { return r == 0 ? (x < 0.5 ? 1.0 : 2.0) : 0.0; }, 16, true};
    s.initial = [](double, double x, double) { return 1.0 + x + x * x * (1.0 - x) * (1.0 - x); };
    s.source = [](double t, double x, double) {
        return (-2.0 + 12.0 * x - 12.0 * x * x + x * x * (1.0 - x) * (1.0 - x)) * std::exp(t);
    };
    // Boundary traces of D^l f: p(0) = p(1) = -2, p'' = -22 at both ends, p'''' = 24.
    s.traces = SourceTraces{[](int level, int, double t, double, double) {
                                static constexpr double trace[] = {-2.0, -22.0, 24.0};
                                return level < 3 ? trace[level] * std::exp(t) : 0.0;
                            },
                            15, 15};
    s.reference = ReferenceRecipe{"gauss:2", 1.0 / 4000.0};
    s.corrections = {"analytic:affine", "analytic:quadratic", "harmonic", "stationary", "chain:1", "chain:2"};
    s.default_correction = "analytic:quadratic";
    s.ladder_start = 5e-2;
    return s;
}

void square(double, const GridLayout&, std::span<const double> u, std::span<double> out) {
    for (std::size_t k = 0; k < u.size(); ++k) out[k] = u[k] * u[k];
}

ProblemSpec make_ex3(std::size_t n) {
    ProblemSpec s(build_laplacian_1d(Grid1D{n}));
    s.id = "ex3";
    s.title = "u_t = u_xx + u^2, time-dependent Dirichlet data";
    s.n = n;
    s.horizon = 0.5;
    const double rate = -pi * pi;
    s.boundary = {[rate](int r, double t, double x, double) {
                      const double d = exp_derivative(1.0, rate, r, t);
                      return (r == 0 ? 1.0 : 0.0) + (x < 0.5 ? -d : d);
                  },
                  16, false};
    s.initial = [](double, double x, double) { return 1.0 + std::sin(pi * (x - 0.5)); };
    s.nonlinearity = square;
    s.reference = ReferenceRecipe{"krogstad", 1.0 / 40000.0};
    s.corrections = {"analytic:caloric", "analytic:affine", "harmonic"};
    s.default_correction = "analytic:caloric";
    s.ladder_start = 5e-2;
    return s;
}

ProblemSpec make_ex4(std::size_t n) {
    ProblemSpec s(build_laplacian_1d(Grid1D{n, BoundaryKind::dirichlet, BoundaryKind::neumann}));
    s.id = "ex4";
    s.title = "u_t = u_xx + u^2, Dirichlet/Neumann data";
    s.n = n;
    s.right = BoundaryKind::neumann;
    s.horizon = 1.0;
    const double rate = -0.25 * pi * pi;
    s.boundary = {[rate](int r, double t, double x, double) {
                      if (x < 0.5) return (r == 0 ? 1.0 : 0.0) - exp_derivative(1.0, rate, r, t);
                      return exp_derivative(0.5 * pi, rate, r, t);
                  },
                  16, false};
    s.initial = [](double, double x, double) { return 1.0 + std::sin(0.5 * pi * (x - 1.0)); };
    s.nonlinearity = square;
    s.reference = ReferenceRecipe{"krogstad", 1.0 / 20000.0};
    s.corrections = {"analytic:caloric", "analytic:affine"};
    s.default_correction = "analytic:caloric";
    s.ladder_start = 5e-2;
    return s;
}

double ex5_data(double x, double y) {
    const double cy = std::cos(pi * y);
    const double sx = std::sin(2.0 * pi * x);
    const double a = x - 0.5 - 0.1 * cy * cy;
    const double b = y - 0.5 - 0.1 * sx * sx;
    const double r2 = (x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5);
    return 0.5 + 2.0 * std::exp(-40.0 * a * a) + 2.0 * std::exp(-35.0 * b * b) - 2.0 * std::exp(-35.0 * r2);
}

ProblemSpec make_ex5(std::size_t n) {
    ProblemSpec s(build_laplacian_2d(Grid2D{n}));
    s.id = "ex5";
    s.title = "u_t = Laplace(u) + u^2 on the unit square, stationary Dirichlet data";
    s.spatial_dim = 2;
    s.n = n;
    s.horizon = 0.5;
    s.boundary = {[](int r, double, double x, double y) { return r == 0 ? ex5_data(x, y) : 0.0; }, 16, true};
    s.initial = [](double, double x, double y) { return ex5_data(x, y); };
    s.nonlinearity = square;
    s.reference = ReferenceRecipe{"rk4", 1e-5};
    s.corrections = {"harmonic", "stationary", "frozen-state"};
    s.default_correction = "harmonic";
    s.ladder_start = 1.25e-2;
    return s;
}

}  // namespace

std::string ReferenceRecipe::label() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", tau);
    return method + ":" + buf;
}

ReferenceRecipe ReferenceRecipe::parse(std::string_view text) {
    const auto colon = text.rfind(':');
    if (colon == std::string_view::npos || colon == 0) throw InvalidArgument("reference must read method:step");
    ReferenceRecipe r;
    r.method = std::string(text.substr(0, colon));
    auto step = text.substr(colon + 1);
    if (step.starts_with("1/")) {
        r.tau = 1.0 / parse_double(step.substr(2), "reference step");
    } else {
        r.tau = parse_double(step, "reference step");
    }
    if (!(r.tau > 0.0)) throw InvalidArgument("reference step must be positive");
    if (r.method != "rk4") registry_get(r.method);
    return r;
}

std::vector<std::string> problem_ids() { return {"ex1", "ex2", "ex3", "ex4", "ex5"}; }

ProblemSpec build_problem(std::string_view id, std::size_t n) {
    if (id == "ex1") return make_ex1(n == 0 ? 512 : n);
    if (id == "ex2") return make_ex2(n == 0 ? 512 : n);
    if (id == "ex3") return make_ex3(n == 0 ? 512 : n);
    if (id == "ex4") return make_ex4(n == 0 ? 256 : n);
    if (id == "ex5") return make_ex5(n == 0 ? 64 : n);
    throw UnknownName(std::string(id));
}

CorrectionField make_correction(const ProblemSpec& spec, std::string_view name) {
    const GridLayout& g = spec.layout();
    const BoundaryData& b = spec.boundary;
    auto zero = [](double, double, double) { return 0.0; };

    if (name == "harmonic") return harmonic_correction(g, b);
    if (name == "stationary") return stationary_correction(g, b);
    if (name == "frozen-state") return frozen_state_correction(g, b);
    if (name.starts_with("chain:")) {
        if (!spec.traces) throw InsufficientData("problem " + spec.id + " provides no source traces for a chain");
        const int m = static_cast<int>(parse_double(name.substr(6), "chain order"));
        return build_chain(m, g, b, *spec.traces).field();
    }

    if (spec.id == "ex1" && name == "analytic:affine") {
        return analytic_correction(
            g, b, [](double t, double x, double) { return 1.0 + (2.0 * x - 1.0) * std::exp(t); },
            [](double t, double x, double) { return (2.0 * x - 1.0) * std::exp(t); }, zero);
    }
    if (spec.id == "ex2" && name == "analytic:affine") {
        return analytic_correction(
            g, b, [](double, double x, double) { return 1.0 + x; }, zero, zero);
    }
    if (spec.id == "ex2" && name == "analytic:quadratic") {
        return analytic_correction(
            g, b, [](double t, double x, double) { return 1.0 + (1.0 - std::exp(t)) * x + std::exp(t) * x * x; },
            [](double t, double x, double) { return (x * x - x) * std::exp(t); },
            [](double t, double, double) { return 2.0 * std::exp(t); });
    }
    if (spec.id == "ex3") {
        const double rate = -pi * pi;
        if (name == "analytic:caloric") {
            auto z = [rate](double t, double x, double) { return 1.0 + std::exp(rate * t) * std::sin(pi * (x - 0.5)); };
            auto heat = [rate](double t, double x, double) {
                return rate * std::exp(rate * t) * std::sin(pi * (x - 0.5));
            };
            return analytic_correction(g, b, z, heat, heat);
        }
        if (name == "analytic:affine") {
            return analytic_correction(
                g, b, [rate](double t, double x, double) { return 1.0 + (2.0 * x - 1.0) * std::exp(rate * t); },
                [rate](double t, double x, double) { return rate * (2.0 * x - 1.0) * std::exp(rate * t); }, zero);
        }
    }
    if (spec.id == "ex4") {
        const double rate = -0.25 * pi * pi;
        if (name == "analytic:caloric") {
            auto z = [rate](double t, double x, double) {
                return 1.0 + std::exp(rate * t) * std::sin(0.5 * pi * (x - 1.0));
            };
            auto heat = [rate](double t, double x, double) {
                return rate * std::exp(rate * t) * std::sin(0.5 * pi * (x - 1.0));
            };
            auto flux = [rate](double t, double x, double) {
                return 0.5 * pi * std::exp(rate * t) * std::cos(0.5 * pi * (x - 1.0));
            };
            return analytic_correction(g, b, z, heat, heat, flux);
        }
        if (name == "analytic:affine") {
            return analytic_correction(
                g, b, [rate](double t, double x, double) { return 1.0 + (0.5 * pi * x - 1.0) * std::exp(rate * t); },
                [rate](double t, double x, double) { return rate * (0.5 * pi * x - 1.0) * std::exp(rate * t); }, zero,
                [rate](double t, double, double) { return 0.5 * pi * std::exp(rate * t); });
        }
    }
    throw UnknownName("correction '" + std::string(name) + "' for problem " + spec.id);
}

std::vector<double> initial_state(const ProblemSpec& spec) { return sample_on_state(spec.initial, 0.0, spec.layout()); }

std::vector<double> exact_state(const ProblemSpec& spec, double t) {
    if (!spec.exact) throw InvalidArgument("problem " + spec.id + " has no exact solution");
    return sample_on_state(spec.exact, t, spec.layout());
}

namespace {

SemilinearProblem as_problem(const ProblemSpec& spec, const CorrectionField& correction) {
    if (spec.linear())
        return as_semilinear(LinearProblem{spec.op, spec.source, correction, initial_state(spec), spec.horizon});
    return SemilinearProblem{spec.op, spec.nonlinearity, correction, initial_state(spec), spec.horizon};
}

// Classical RK4 on w' = Aw + f(t, w + z) + k, with A applied by its stencil.
Trajectory run_rk4(const SemilinearProblem& p, const StepSequence& steps, const IntegrateOptions& options) {
    if (p.correction.depends_on_state()) throw InvalidArgument("rk4 does not support the frozen-state correction");
    const GridLayout& g = p.op.layout();
    const std::size_t n = p.op.dimension();

    auto rhs = [&](double t, const std::vector<double>& w, std::vector<double>& out) {
        const auto s = p.correction.sample(t);
        std::vector<double> u(n);
        for (std::size_t k = 0; k < n; ++k) u[k] = w[k] + s.value[g.unknowns[k]];
        p.nonlinearity(t, g, u, out);
        const auto aw = p.op.apply(w);
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t c = g.unknowns[k];
            out[k] += aw[k] + s.operator_image[c] - s.time_derivative[c];
        }
    };

    std::vector<double> w = p.u0;
    {
        const auto z0 = g.restrict_to_state(p.correction.value(0.0));
        for (std::size_t k = 0; k < n; ++k) w[k] -= z0[k];
    }
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    Trajectory out;
    double t = 0.0;
    for (std::size_t step = 0; step < steps.size(); ++step) {
        const double h = steps[step];
        rhs(t, w, k1);
        for (std::size_t k = 0; k < n; ++k) tmp[k] = w[k] + 0.5 * h * k1[k];
        rhs(t + 0.5 * h, tmp, k2);
        for (std::size_t k = 0; k < n; ++k) tmp[k] = w[k] + 0.5 * h * k2[k];
        rhs(t + 0.5 * h, tmp, k3);
        for (std::size_t k = 0; k < n; ++k) tmp[k] = w[k] + h * k3[k];
        rhs(t + h, tmp, k4);
        for (std::size_t k = 0; k < n; ++k) w[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        t += h;
        if (!std::all_of(w.begin(), w.end(), [](double x) { return std::isfinite(x); })) throw DivergenceError(step);
        if (options.snapshot_every != 0 && (step + 1) % options.snapshot_every == 0) {
            auto u = w;
            const auto z = g.restrict_to_state(p.correction.value(t));
            for (std::size_t k = 0; k < n; ++k) u[k] += z[k];
            out.snapshots.emplace_back(t, std::move(u));
        }
    }
    const auto z = g.restrict_to_state(p.correction.value(t));
    for (std::size_t k = 0; k < n; ++k) w[k] += z[k];
    out.final_state = std::move(w);
    out.final_time = t;
    out.steps = steps.size();
    return out;
}

}  // namespace

Trajectory run_problem(const ProblemSpec& spec, const CorrectionField& correction, std::string_view method,
                       const StepSequence& steps, const IntegrateOptions& options) {
    const auto problem = as_problem(spec, correction);
    if (method == "rk4") return run_rk4(problem, steps, options);
    return integrate(problem, registry_get(method), steps, options);
}

}  // namespace explab::lab
