#include <doctest.h>

#include <cmath>
#include <numbers>

#include "explab/correction.hpp"
#include "explab/errors.hpp"
#include "explab/integrate.hpp"
#include "explab/lab/problems.hpp"
#include "explab/norms.hpp"
#include "explab/phi.hpp"
#include "explab/steppers.hpp"

using namespace explab;

namespace {

BoundaryData constant_boundary(double value) {
    return {[value](int r, double, double, double) { return r == 0 ? value : 0.0; }, 4, true};
}

double max_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST_CASE("vanishing source gives the homogeneous flow around a constant correction") {
    const auto op = build_laplacian_1d(Grid1D{31});
    const auto& g = op.layout();
    const PhiEvaluator ev(op);
    std::vector<double> u0(31);
    for (std::size_t i = 0; i < u0.size(); ++i) u0[i] = 3.0 + std::sin(5.0 * g.coords(g.unknowns[i])[0]);
    const LinearProblem p{op, [](double, double, double) { return 0.0; }, stationary_correction(g, constant_boundary(3.0)), u0, 1.0};
    std::vector<double> shifted(u0);
    for (double& x : shifted) x -= 3.0;
    auto want = ev.apply(0, 0.02, shifted);
    for (double& x : want) x += 3.0;
    for (const char* m : {"gauss:2", "radau:3"})
        CHECK(max_diff(linear_step(u0, 0.0, 0.02, p, std::get<WeightSet>(registry_get(m)), ev), want) <= 1e-14);

    const SemilinearProblem sp{op, [](double, const GridLayout&, std::span<const double>, std::span<double> out) {
                                   std::fill(out.begin(), out.end(), 0.0);
                               },
                               stationary_correction(g, constant_boundary(0.0)), shifted, 1.0};
    const auto flow = ev.apply(0, 0.02, shifted);
    for (const char* m : {"euler", "strehmel-weiner", "krogstad"})
        CHECK(max_diff(semilinear_step(shifted, 0.0, 0.02, sp, std::get<ExponentialTableau>(registry_get(m)), ev), flow) <= 1e-15);
}

TEST_CASE("exponential Euler is exact for a constant source along an eigenvector") {
    const auto op = build_laplacian_1d(Grid1D{31});
    const auto& g = op.layout();
    const PhiEvaluator ev(op);
    const double lambda = dirichlet_eigenvalue(1, g.dx);
    auto mode = [](double, double x, double) { return std::sin(std::numbers::pi * x); };
    const LinearProblem p{op, mode, stationary_correction(g, constant_boundary(0.0)), sample_on_state(mode, 0.0, g), 1.0};
    const auto euler = solve_weights(NodeSet::custom({0.0}));
    const double tau = 0.01;
    const auto got = linear_step(p.u0, 0.0, tau, p, euler, ev);
    const double factor = std::exp(tau * lambda) + tau * phi(1, tau * lambda);
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(factor * p.u0[i]).epsilon(1e-14).scale(1.0));
}

namespace {

// u(tau) = z(tau) + e^{tau A}(u0 - z0) + int_0^tau e^{(tau - s) A} (f + k)(s) ds, in the eigenbasis
// with the five-point rule on `panels` panels.
std::vector<double> variation_of_constants(const lab::ProblemSpec& spec, const CorrectionField& corr,
                                           std::span<const double> u0, double tau, int panels) {
    static const double xg[] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640};
    static const double wg[] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891, 0.2369268850561891};
    const auto& g = spec.layout();
    const std::size_t dim = spec.op.dimension();
    const auto lambda = spec.op.eigenvalues();
    const double h = tau / panels;
    std::vector<double> integral(dim, 0.0), c(dim);
    for (int q = 0; q < panels; ++q)
        for (int k = 0; k < 5; ++k) {
            const double s = h * (q + 0.5 + 0.5 * xg[k]);
            auto gs = sample_on_state(spec.source, s, g);
            const auto ks = g.restrict_to_state(corr.source(s));
            for (std::size_t i = 0; i < dim; ++i) gs[i] += ks[i];
            spec.op.forward(gs, c);
            for (std::size_t i = 0; i < dim; ++i) integral[i] += 0.5 * h * wg[k] * std::exp((tau - s) * lambda[i]) * c[i];
        }
    std::vector<double> w0(u0.begin(), u0.end()), out(dim);
    const auto z0 = g.restrict_to_state(corr.value(0.0));
    for (std::size_t i = 0; i < dim; ++i) w0[i] -= z0[i];
    spec.op.forward(w0, c);
    for (std::size_t i = 0; i < dim; ++i) c[i] = std::exp(tau * lambda[i]) * c[i] + integral[i];
    spec.op.inverse(c, out);
    const auto z1 = g.restrict_to_state(corr.value(tau));
    for (std::size_t i = 0; i < dim; ++i) out[i] += z1[i];
    return out;
}

}  // namespace

TEST_CASE("one Gauss step against quadrature of the variation-of-constants formula") {
    const auto spec = lab::build_problem("ex1", 127);
    const auto corr = lab::make_correction(spec, "analytic:affine");
    const LinearProblem p{spec.op, spec.source, corr, lab::initial_state(spec), spec.horizon};
    const auto gauss = std::get<WeightSet>(registry_get("gauss:2"));
    const PhiEvaluator ev(spec.op);

    // 2000 panels: 10^4 source evaluations; the oracle itself is converged
    const auto want = variation_of_constants(spec, corr, p.u0, 0.1, 2000);
    CHECK(max_diff(want, variation_of_constants(spec, corr, p.u0, 0.1, 4000)) <= 1e-13 * max_abs(want));

    // the remaining difference is the local error, O(tau^3) in the max norm
    std::vector<double> local;
    for (double tau : {0.1, 0.05, 0.025, 0.0125}) {
        const auto ref = variation_of_constants(spec, corr, p.u0, tau, 2000);
        local.push_back(max_diff(linear_step(p.u0, 0.0, tau, p, gauss, ev), ref) / max_abs(ref));
    }
    CHECK(local[0] <= 1e-5);
    for (std::size_t i = 1; i < local.size(); ++i) CHECK(std::log2(local[i - 1] / local[i]) == doctest::Approx(3.0).epsilon(0.05));
    CHECK(local.back() <= 1e-8);
}

TEST_CASE("one Krogstad step against a direct transcription of the tableau") {
    const auto spec = lab::build_problem("ex3", 127);
    const auto corr = lab::make_correction(spec, "analytic:caloric");
    const auto& g = spec.layout();
    const SemilinearProblem p{spec.op, spec.nonlinearity, corr, lab::initial_state(spec), spec.horizon};
    const double tau = 0.05;
    const auto got = semilinear_step(p.u0, 0.0, tau, p, std::get<ExponentialTableau>(registry_get("krogstad")), PhiEvaluator(spec.op));

    const std::size_t dim = spec.op.dimension();
    const auto lambda = spec.op.eigenvalues();
    using Vec = std::vector<double>;
    auto fwd = [&](const Vec& v) { Vec c(dim); spec.op.forward(v, c); return c; };
    auto inv = [&](const Vec& c) { Vec v(dim); spec.op.inverse(c, v); return v; };
    auto z = [&](double t) { return g.restrict_to_state(corr.value(t)); };
    auto G = [&](double t, const Vec& u) {
        Vec out(dim);
        spec.nonlinearity(t, g, u, out);
        const auto k = g.restrict_to_state(corr.source(t));
        for (std::size_t i = 0; i < dim; ++i) out[i] += k[i];
        return fwd(out);
    };
    // phi_j(c tau lambda_i)
    auto ph = [&](int j, double c, std::size_t i) { return phi(j, c * tau * lambda[i]); };
    auto stage = [&](double c, const Vec& what) {
        const auto zc = z(c * tau);
        Vec v = inv(what);
        for (std::size_t i = 0; i < dim; ++i) v[i] += zc[i];
        return v;
    };
    Vec w0 = p.u0;
    const auto z0 = z(0.0);
    for (std::size_t i = 0; i < dim; ++i) w0[i] -= z0[i];
    const Vec hw = fwd(w0);

    const Vec g1 = G(0.0, p.u0);
    Vec s2(dim), s3(dim), s4(dim), s5(dim);
    for (std::size_t i = 0; i < dim; ++i) s2[i] = std::exp(0.5 * tau * lambda[i]) * hw[i] + tau * 0.5 * ph(1, 0.5, i) * g1[i];
    const Vec u2 = stage(0.5, s2);
    const Vec g2 = G(0.5 * tau, u2);
    for (std::size_t i = 0; i < dim; ++i)
        s3[i] = std::exp(0.5 * tau * lambda[i]) * hw[i] + tau * ((0.5 * ph(1, 0.5, i) - ph(2, 0.5, i)) * g1[i] + ph(2, 0.5, i) * g2[i]);
    const Vec u3 = stage(0.5, s3);
    const Vec g3 = G(0.5 * tau, u3);
    for (std::size_t i = 0; i < dim; ++i)
        s4[i] = std::exp(tau * lambda[i]) * hw[i] + tau * ((ph(1, 1, i) - 2.0 * ph(2, 1, i)) * g1[i] + 2.0 * ph(2, 1, i) * g3[i]);
    const Vec u4 = stage(1.0, s4);
    const Vec g4 = G(tau, u4);
    for (std::size_t i = 0; i < dim; ++i) {
        const double p1 = ph(1, 1, i), p2 = ph(2, 1, i), p3 = ph(3, 1, i);
        s5[i] = std::exp(tau * lambda[i]) * hw[i] +
                tau * ((p1 - 3.0 * p2 + 4.0 * p3) * g1[i] + (2.0 * p2 - 4.0 * p3) * (g2[i] + g3[i]) + (4.0 * p3 - p2) * g4[i]);
    }
    const Vec want = stage(1.0, s5);
    CHECK(max_diff(got, want) <= 1e-13 * max_abs(want));
}

TEST_CASE("u-form and w-form steps agree") {
    const auto spec = lab::build_problem("ex4", 63);
    const auto corr = lab::make_correction(spec, "analytic:affine");
    const auto& g = spec.layout();
    const SemilinearProblem p{spec.op, spec.nonlinearity, corr, lab::initial_state(spec), spec.horizon};
    const PhiEvaluator ev(spec.op);
    for (const char* m : {"euler", "strehmel-weiner", "krogstad"}) {
        const auto tab = std::get<ExponentialTableau>(registry_get(m));
        auto w = p.u0;
        const auto z0 = g.restrict_to_state(corr.value(0.1));
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= z0[i];
        const auto u1 = semilinear_step(p.u0, 0.1, 0.04, p, tab, ev);
        auto w1 = semilinear_step_w(w, 0.1, 0.04, p, tab, ev);
        const auto z1 = g.restrict_to_state(corr.value(0.14));
        for (std::size_t i = 0; i < w1.size(); ++i) w1[i] += z1[i];
        CHECK(max_diff(u1, w1) <= 1e-12 * max_abs(u1));
    }
}

TEST_CASE("integrate") {
    const auto spec = lab::build_problem("ex1", 127);
    const auto corr = lab::make_correction(spec, "analytic:affine");
    const LinearProblem p{spec.op, spec.source, corr, lab::initial_state(spec), spec.horizon};
    const auto gauss = registry_get("gauss:2");

    SUBCASE("zero steps return the initial state") {
        const auto traj = integrate(p, gauss, StepSequence::custom({}));
        CHECK(traj.steps == 0);
        CHECK(traj.final_state == p.u0);
    }
    SUBCASE("constant and custom sequences and the symbol cache are transparent") {
        const auto a = integrate(p, gauss, StepSequence::constant(1.0, 0.05));
        const auto b = integrate(p, gauss, StepSequence::custom(std::vector<double>(20, 0.05)));
        const auto c = integrate(p, gauss, StepSequence::constant(1.0, 0.05), {0, false});
        CHECK(a.final_state == b.final_state);
        CHECK(a.final_state == c.final_state);
        CHECK(a.steps == 20);
        CHECK(a.final_time == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("snapshots") {
        const auto traj = integrate(p, gauss, StepSequence::constant(1.0, 0.1), {5, true});
        REQUIRE(traj.snapshots.size() >= 2);
        CHECK(traj.snapshots.back().first == doctest::Approx(1.0));
    }
}

TEST_CASE("time-dependent problem at fine resolution reaches the expected accuracy") {
    const auto spec = lab::build_problem("ex1", 512);
    const auto corr = lab::make_correction(spec, "analytic:affine");
    const auto traj = lab::run_problem(spec, corr, "gauss:2", StepSequence::constant(1.0, 1.0 / 160.0));
    auto err = traj.final_state;
    const auto exact = lab::exact_state(spec, 1.0);
    for (std::size_t i = 0; i < err.size(); ++i) err[i] -= exact[i];
    CHECK(norm(err, NormKind::linf(), spec.op) <= 5e-8);
}

TEST_CASE("blow-up is reported as divergence") {
    const auto op = build_laplacian_1d(Grid1D{15});
    const auto& g = op.layout();
    const SemilinearProblem p{op, [](double, const GridLayout&, std::span<const double> u, std::span<double> out) {
                                  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] * u[i];
                              },
                              stationary_correction(g, constant_boundary(0.0)), std::vector<double>(15, 1e3), 5.0};
    CHECK_THROWS_AS(integrate(p, registry_get("euler"), StepSequence::constant(5.0, 0.5)), DivergenceError);
}

TEST_CASE("step sequences") {
    CHECK(StepSequence::constant(1.0, 0.125).size() == 8);
    CHECK_THROWS_AS(StepSequence::constant(1.0, 0.3), InvalidArgument);
    CHECK_THROWS_AS(StepSequence::custom({0.1, -0.1}), InvalidArgument);
    const auto q = StepSequence::quasi_uniform(0.5, 0.01, 0.5, 9);
    double sum = 0.0;
    for (double s : q.steps()) {
        CHECK(s <= 0.01);
        CHECK(s >= 0.5 * 0.01);
        sum += s;
    }
    CHECK(sum == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(q.kappa() <= 2.0);
    const auto again = StepSequence::quasi_uniform(0.5, 0.01, 0.5, 9);
    CHECK(std::equal(q.steps().begin(), q.steps().end(), again.steps().begin(), again.steps().end()));
}
