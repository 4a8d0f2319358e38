#include "explab/lab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "explab/elliptic.hpp"
#include "explab/lab/sweep.hpp"
#include "explab/phi.hpp"
#include "explab/steppers.hpp"
#include "explab/weights.hpp"

namespace explab::lab {

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            detail << (detail.tellp() > 0 ? "; " : "") << "FAILED " << what;
        }
    }
    void note(const std::string& text) { detail << (detail.tellp() > 0 ? "; " : "") << text; }
};

std::string num(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }

double last_order(const ConvergenceReport& r, std::size_t norm, std::size_t back = 0) {
    const auto& o = r.rows[r.rows.size() - 1 - back].orders[norm];
    return o ? *o : std::nan("");
}

ConvergenceReport sweep(const AcceptanceOptions& opt, std::string problem, std::string method, std::string correction,
                        std::vector<double> steps, std::vector<NormKind> norms, std::size_t grid = 0) {
    SweepConfig c;
    c.problem = std::move(problem);
    c.method = std::move(method);
    c.correction = std::move(correction);
    c.steps = std::move(steps);
    c.norms = std::move(norms);
    c.grid = grid;
    c.cache_dir = opt.cache_dir;
    c.parallel = opt.parallel;
    return run_sweep(c);
}

std::vector<double> ladder(double start, int count) {
    std::vector<double> s;
    for (int i = 0; i < count; ++i) s.push_back(std::ldexp(start, -i));
    return s;
}

void expect_order(Check& c, const ConvergenceReport& r, std::size_t norm, double target, double tol,
                  const std::string& label, std::size_t back = 0) {
    const double o = last_order(r, norm, back);
    c.note(label + " " + num("%.3f", o));
    c.expect(within(o, target, tol), label + " order " + num("%.3f", o) + " not within " + num("%.2f", tol) + " of " +
                                          num("%.2f", target));
}

void expect_runtime(Check& c, double seconds, double limit) {
    c.expect(seconds <= limit, "runtime " + num("%.1f", seconds) + " s exceeds " + num("%.0f", limit) + " s");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --- criteria -------------------------------------------------------------

void criterion_table1(Check& c, const AcceptanceOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = sweep(opt, "ex1", "gauss:2", "analytic:affine", ladder(0.1, 5),
                         {NormKind::l1(), NormKind::l2(), NormKind::linf()}, 512);
    expect_order(c, r, 0, 3.50, 0.15, "L1");
    expect_order(c, r, 1, 3.25, 0.15, "L2");
    expect_order(c, r, 2, 3.00, 0.15, "Linf");
    const double e = r.rows.back().errors[2];
    c.note("Linf(6.25e-3) " + num("%.3e", e));
    c.expect(e <= 2.0 * 4.025e-9 && e >= 4.025e-9 / 2.0, "Linf error not within a factor 2 of 4.025e-9");
    expect_runtime(c, seconds_since(start), 30.0);
}

void criterion_table2_3(Check& c, const AcceptanceOptions& opt) {
    const std::vector<NormKind> norms{NormKind::l1(), NormKind::l2(), NormKind::linf()};
    const auto affine = sweep(opt, "ex2", "gauss:2", "analytic:affine", ladder(5e-2, 5), norms, 512);
    expect_order(c, affine, 2, 3.0, 0.15, "affine Linf");
    expect_order(c, affine, 0, 3.5, 0.15, "affine L1");
    for (const char* corr : {"analytic:quadratic", "chain:1"}) {
        const auto r = sweep(opt, "ex2", "gauss:2", corr, ladder(5e-2, 5), norms, 512);
        const std::string label = corr;
        expect_order(c, r, 0, 4.0, 0.1, label + " L1");
        expect_order(c, r, 1, 4.0, 0.1, label + " L2");
        expect_order(c, r, 2, 4.0, 0.1, label + " Linf");
        const double e = r.rows.back().errors[1];
        c.note(label + " L2(3.125e-3) " + num("%.3e", e) + (r.rows.back().below_floor ? " (floor)" : ""));
        c.expect(e <= 3.0 * 8.948e-12 && e >= 8.948e-12 / 3.0, label + " L2 error not within a factor 3 of 8.948e-12");
    }
}

void criterion_table4(Check& c, const AcceptanceOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    const std::pair<const char*, std::pair<double, double>> methods[] = {
        {"euler", {1.0, 0.1}}, {"strehmel-weiner", {2.0, 0.1}}, {"krogstad", {4.0, 0.15}}};
    for (const auto& [m, target] : methods) {
        const auto r = sweep(opt, "ex3", m, "analytic:caloric", ladder(5e-2, 5), {NormKind::l2()}, 512);
        expect_order(c, r, 0, target.first, target.second, m);
    }
    expect_runtime(c, seconds_since(start), 60.0);
}

void criterion_table5(Check& c, const AcceptanceOptions& opt) {
    const std::pair<const char*, std::pair<double, double>> methods[] = {
        {"euler", {1.0, 0.1}}, {"strehmel-weiner", {1.8, 0.15}}, {"krogstad", {3.8, 0.15}}};
    for (const auto& [m, target] : methods) {
        const auto r = sweep(opt, "ex3", m, "analytic:affine", ladder(2.5e-2, 5), {NormKind::xalpha(0.5)}, 512);
        expect_order(c, r, 0, target.first, target.second, m);
    }
}

void criterion_table6_7(Check& c, const AcceptanceOptions& opt) {
    for (const char* corr : {"analytic:caloric", "analytic:affine"}) {
        const std::string tag = std::string(corr).substr(9);
        const auto eu = sweep(opt, "ex4", "euler", corr, ladder(5e-2, 5), {NormKind::l2()}, 256);
        expect_order(c, eu, 0, 1.0, 0.1, tag + " euler");
        const auto sw = sweep(opt, "ex4", "strehmel-weiner", corr, ladder(5e-2, 5), {NormKind::l2()}, 256);
        expect_order(c, sw, 0, 2.0, 0.1, tag + " strehmel-weiner");
        const auto kr = sweep(opt, "ex4", "krogstad", corr, ladder(5e-2, 5), {NormKind::l2()}, 256);
        for (std::size_t back : {1u, 0u}) {
            const double o = last_order(kr, 0, back);
            c.note(tag + " krogstad " + num("%.3f", o));
            c.expect(o >= 3.4 && o <= 3.9, tag + " krogstad order " + num("%.3f", o) + " outside [3.4, 3.9]");
        }
    }
}

void criterion_table8(Check& c, const AcceptanceOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    const auto eu = sweep(opt, "ex5", "euler", "harmonic", ladder(1.25e-2, 5), {NormKind::l2()}, 64);
    expect_order(c, eu, 0, 1.0, 0.15, "euler");
    const auto sw = sweep(opt, "ex5", "strehmel-weiner", "harmonic", ladder(1.25e-2, 5), {NormKind::l2()}, 64);
    expect_order(c, sw, 0, 2.0, 0.15, "strehmel-weiner");
    const auto kr = sweep(opt, "ex5", "krogstad", "harmonic", ladder(1.25e-2, 5), {NormKind::l2()}, 64);
    std::string seq;
    bool increasing = true;
    for (std::size_t i = 1; i < kr.rows.size(); ++i) {
        const double o = kr.rows[i].orders[0].value_or(std::nan(""));
        seq += (i > 1 ? " " : "") + num("%.2f", o);
        if (i > 1 && !(o >= kr.rows[i - 1].orders[0].value_or(1e300) - 0.05)) increasing = false;
    }
    c.note("krogstad orders " + seq);
    c.expect(increasing, "krogstad orders not increasing");
    c.expect(last_order(kr, 0) >= 3.7, "krogstad finest order below 3.7");
    expect_runtime(c, seconds_since(start), 180.0);
}

// Composite five-point Gauss-Legendre rule on [0,1].
double integrate01(const std::function<double(double)>& f, int panels) {
    static const double x[] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                               0.9061798459386640};
    static const double w[] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
                               0.2369268850561891};
    double sum = 0.0;
    const double h = 1.0 / panels;
    for (int p = 0; p < panels; ++p)
        for (int k = 0; k < 5; ++k) sum += 0.5 * h * w[k] * f(h * (p + 0.5 + 0.5 * x[k]));
    return sum;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

void criterion_properties(Check& c, const AcceptanceOptions&) {
    std::mt19937_64 rng(7);

    // phi recurrence and branch agreement
    double worst_rec = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double z = -std::pow(10.0, -8.0 + 14.0 * i / 400.0);
        for (int j = 1; j <= 4; ++j) {
            const double lhs = z * phi(j, z) + 1.0 / factorial(j - 1);
            const double scale = std::max(std::abs(phi(j - 1, z)), 1.0 / factorial(j - 1));
            worst_rec = std::max(worst_rec, std::abs(lhs - phi(j - 1, z)) / scale);
        }
    }
    c.note("phi recurrence " + num("%.1e", worst_rec));
    c.expect(worst_rec <= 1e-12, "phi recurrence residual above 1e-12");
    double worst_branch = 0.0;
    for (int j = 0; j <= kMaxPhiOrder; ++j) {
        for (double r : {1.0, 1.0 + 1.5 * (j - 2)}) {
            if (r < 1.0) continue;
            const double below = phi(j, -std::nextafter(r, 0.0));
            const double above = phi(j, -r);
            worst_branch = std::max(worst_branch, std::abs(below - above) / std::abs(above));
        }
    }
    c.note("branch gap " + num("%.1e", worst_branch));
    c.expect(worst_branch <= 1e-13, "series/recurrence branch gap above 1e-13");

    // order conditions sum_i b_i(z) c_i^{j-1}/(j-1)! = phi_j(z)
    double worst_oc = 0.0;
    std::uniform_real_distribution<double> zdist(-50.0, 0.0);
    for (int s = 1; s <= 4; ++s) {
        for (const auto& nodes : {NodeSet::gauss(s), NodeSet::radau(s)}) {
            const auto w = solve_weights(nodes);
            for (int trial = 0; trial < 20; ++trial) {
                const double z = zdist(rng);
                for (int j = 1; j <= s; ++j) {
                    double sum = 0.0;
                    for (std::size_t i = 0; i < w.stages(); ++i)
                        sum += w.weight(i, z) * std::pow(nodes.c[i], j - 1) / factorial(j - 1);
                    worst_oc = std::max(worst_oc, std::abs(sum - phi(j, z)));
                }
            }
        }
    }
    c.note("order conditions " + num("%.1e", worst_oc));
    c.expect(worst_oc <= 1e-12, "weight order-condition residual above 1e-12");

    // weak order matches classical order: Gauss 2s, right Radau 2s-1
    bool weak = true;
    for (int s = 1; s <= 4; ++s) {
        weak = weak && check_weak_order(NodeSet::gauss(s), s) && !check_weak_order(NodeSet::gauss(s), s + 1);
        weak = weak && check_weak_order(NodeSet::radau(s), s - 1) && !check_weak_order(NodeSet::radau(s), s);
    }
    c.expect(weak, "weak-order checks disagree with classical Gauss/Radau orders");

    // phi_j(tau A) v against quadrature of the integral representation with a dense matrix exponential
    {
        const auto op = build_laplacian_1d(Grid1D{5, BoundaryKind::dirichlet, BoundaryKind::neumann});
        const PhiEvaluator ev(op);
        const Eigen::MatrixXd A = op.assemble();
        std::normal_distribution<double> nd;
        std::vector<double> v(op.dimension());
        for (double& x : v) x = nd(rng);
        const Eigen::Map<const Eigen::VectorXd> vv(v.data(), static_cast<Eigen::Index>(v.size()));
        const double tau = 0.01;
        double worst = 0.0;
        for (int j = 1; j <= 4; ++j) {
            const auto got = ev.apply(j, tau, v);
            Eigen::VectorXd want = Eigen::VectorXd::Zero(vv.size());
            for (Eigen::Index r = 0; r < vv.size(); ++r) {
                want[r] = integrate01(
                    [&](double th) {
                        const Eigen::MatrixXd E = ((1.0 - th) * tau * A).exp();
                        return (E * vv)[r] * std::pow(th, j - 1) / factorial(j - 1);
                    },
                    40);
            }
            for (Eigen::Index r = 0; r < vv.size(); ++r)
                worst = std::max(worst, std::abs(got[static_cast<std::size_t>(r)] - want[r]) / want.cwiseAbs().maxCoeff());
        }
        c.note("phi quadrature oracle " + num("%.1e", worst));
        c.expect(worst <= 1e-9, "phi_apply disagrees with the integral representation");
    }

    // u-form / w-form equivalence
    {
        double worst = 0.0;
        auto compare = [&](const std::vector<double>& u, const std::vector<double>& w, const std::vector<double>& z) {
            double scale = 1.0;
            for (double x : u) scale = std::max(scale, std::abs(x));
            for (std::size_t k = 0; k < u.size(); ++k) worst = std::max(worst, std::abs(u[k] - w[k] - z[k]) / scale);
        };
        {
            const auto spec = build_problem("ex1", 128);
            const auto corr = make_correction(spec, "analytic:affine");
            const LinearProblem p{spec.op, spec.source, corr, initial_state(spec), spec.horizon};
            const auto weights = std::get<WeightSet>(registry_get("gauss:2"));
            const PhiEvaluator ev(spec.op);
            auto u = p.u0;
            auto w = u;
            auto z = spec.layout().restrict_to_state(corr.value(0.0));
            for (std::size_t k = 0; k < w.size(); ++k) w[k] -= z[k];
            double t = 0.0;
            for (int n = 0; n < 10; ++n) {
                u = linear_step(u, t, 0.05, p, weights, ev);
                w = linear_step_w(w, t, 0.05, p, weights, ev);
                t += 0.05;
                compare(u, w, spec.layout().restrict_to_state(corr.value(t)));
            }
        }
        for (const char* id : {"ex3", "ex4"}) {
            const auto spec = build_problem(id, 128);
            const auto corr = make_correction(spec, "analytic:caloric");
            const SemilinearProblem p{spec.op, spec.nonlinearity, corr, initial_state(spec), spec.horizon};
            const auto tableau = std::get<ExponentialTableau>(registry_get("krogstad"));
            const PhiEvaluator ev(spec.op);
            auto u = p.u0;
            auto w = u;
            auto z = spec.layout().restrict_to_state(corr.value(0.0));
            for (std::size_t k = 0; k < w.size(); ++k) w[k] -= z[k];
            double t = 0.0;
            for (int n = 0; n < 10; ++n) {
                u = semilinear_step(u, t, 0.025, p, tableau, ev);
                w = semilinear_step_w(w, t, 0.025, p, tableau, ev);
                t += 0.025;
                compare(u, w, spec.layout().restrict_to_state(corr.value(t)));
            }
        }
        c.note("u/w equivalence " + num("%.1e", worst));
        c.expect(worst <= 1e-12, "u-form and w-form differ by more than 1e-12");
    }

    // harmonic residual
    {
        double worst = 0.0;
        double worst_raw = 0.0;
        for (const char* id : {"ex1", "ex5"}) {
            const auto spec = build_problem(id);
            const auto z = harmonic_extension(spec.boundary, spec.layout(), 0.3);
            const auto lap = closure_laplacian(spec.layout(), z);
            double zmax = 0.0;
            double rmax = 0.0;
            for (double x : z) zmax = std::max(zmax, std::abs(x));
            for (double x : lap) rmax = std::max(rmax, std::abs(x));
            // normwise: ||Lz|| / (||L|| ||z||) with ||L||_inf = 4 d / h^2
            const double dx = spec.layout().dx;
            const double lnorm = 4.0 * spec.spatial_dim / (dx * dx);
            worst = std::max(worst, rmax / (lnorm * zmax));
            worst_raw = std::max(worst_raw, rmax / zmax);
        }
        c.note("harmonic residual " + num("%.1e", worst) + " (unscaled " + num("%.1e", worst_raw) + ")");
        c.expect(worst <= 1e-10, "harmonic extension residual above 1e-10");
    }

    // compatibility residual distinguishes affine from chain corrections on ex2
    {
        const auto spec = build_problem("ex2");
        auto magnitude = [&](const CorrectionField& corr, double t) {
            auto h = corr.source(t);
            double m = 0.0;
            for (std::size_t i = 0; i < h.size(); ++i) {
                const auto [x, y] = spec.layout().coords(i);
                m = std::max(m, std::abs(h[i] + spec.source(t, x, y)));
            }
            return m;
        };
        const auto chain = make_correction(spec, "chain:1");
        const auto quad = make_correction(spec, "analytic:quadratic");
        const auto affine = make_correction(spec, "analytic:affine");
        const double t = 0.4;
        const double rc = verify_compatibility(chain, spec.source, t, 1);
        const double rq = verify_compatibility(quad, spec.source, t, 1);
        const double ra = verify_compatibility(affine, spec.source, t, 1);
        double fmax = 0.0;
        for (std::size_t i = 0; i < spec.layout().closure_size; ++i)
            fmax = std::max(fmax, std::abs(spec.source(t, spec.layout().coords(i)[0], 0.0)));
        c.note("compatibility chain " + num("%.1e", rc) + " quadratic " + num("%.1e", rq) + " affine " + num("%.1e", ra));
        c.expect(rc <= 1e-8 * magnitude(chain, t), "chain correction violates B(f+k) = 0");
        c.expect(rq <= 1e-8 * magnitude(quad, t), "quadratic correction violates B(f+k) = 0");
        c.expect(ra >= 0.1 * fmax, "affine correction unexpectedly satisfies B(f+k) = 0");
    }
}

void criterion_variable_steps(Check& c, const AcceptanceOptions& opt) {
    SweepConfig cfg;
    cfg.problem = "ex1";
    cfg.method = "gauss:2";
    cfg.correction = "analytic:affine";
    cfg.steps = ladder(0.1, 5);
    cfg.norms = {NormKind::linf()};
    cfg.grid = 512;
    cfg.variable_alpha = 0.5;
    cfg.seed = 2024;
    cfg.cache_dir = opt.cache_dir;
    cfg.parallel = opt.parallel;
    const auto r = run_sweep(cfg);
    // least-squares slope of log error against log tau_max
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(r.rows.size());
    for (const auto& row : r.rows) {
        const double x = std::log(row.step_size);
        const double y = std::log(row.errors[0]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    c.note("fitted order " + num("%.3f", slope) + ", finest pair " + num("%.3f", last_order(r, 0)));
    c.expect(slope >= 2.8, "variable-step global order below 2.8");
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& out, const AcceptanceOptions& options) {
    struct Entry {
        int id;
        const char* name;
        void (*run)(Check&, const AcceptanceOptions&);
    };
    static const Entry entries[] = {
        {1, "ex1 Gauss s=2 analytic correction", criterion_table1},
        {2, "ex2 affine vs quadratic/chain correction", criterion_table2_3},
        {3, "ex3 caloric correction, L2", criterion_table4},
        {4, "ex3 affine correction, X_0.5", criterion_table5},
        {5, "ex4 oblique boundary, both corrections", criterion_table6_7},
        {6, "ex5 2D harmonic correction, n=64", criterion_table8},
        {7, "property suites", criterion_properties},
        {8, "ex1 quasi-uniform variable steps, alpha=0.5", criterion_variable_steps},
    };
    std::vector<CriterionResult> results;
    for (const auto& e : entries) {
        if (!options.only.empty() && !options.only.contains(e.id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Check check;
        try {
            e.run(check, options);
        } catch (const std::exception& ex) {
            check.ok = false;
            check.note(std::string("error: ") + ex.what());
        }
        CriterionResult r{e.id, e.name, check.ok, check.detail.str(), seconds_since(start)};
        out << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.name << "  [" << r.detail << "] ("
            << num("%.1f", r.seconds) << " s)" << std::endl;
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace explab::lab
