#include "explab/lab/sweep.hpp"

#include <atomic>
#include <chrono>
#include <charconv>
#include <cmath>
#include <limits>
#include <thread>

#include "explab/errors.hpp"
#include "explab/lab/reference.hpp"

namespace explab::lab {

namespace {

std::string_view trim(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    return text;
}

double to_double(std::string_view text) {
    text = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw InvalidArgument("not a number: '" + std::string(text) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(trim(text.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::vector<double> errors_against(std::span<const double> u, std::span<const double> ref,
                                   const std::vector<NormKind>& norms, const DiscreteOperator& op) {
    std::vector<double> diff(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) diff[k] = u[k] - ref[k];
    std::vector<double> out;
    for (const auto& kind : norms) out.push_back(norm(diff, kind, op));
    return out;
}

// Values of a fine-grid (2n+1) state at the nodes of the coarse grid.
std::vector<double> restrict_fine(const GridLayout& coarse, const GridLayout& fine, std::span<const double> state) {
    std::vector<double> closure(fine.closure_size, 0.0);
    fine.scatter(state, closure);
    std::vector<double> out(coarse.state_size());
    const std::size_t mc = coarse.n + 2;
    const std::size_t mf = fine.n + 2;
    for (std::size_t k = 0; k < out.size(); ++k) {
        const std::size_t c = coarse.unknowns[k];
        out[k] = coarse.spatial_dim == 1 ? closure[2 * c] : closure[2 * (c / mc) * mf + 2 * (c % mc)];
    }
    return out;
}

StepSequence make_steps(const ProblemSpec& spec, const SweepConfig& config, double tau, std::size_t row) {
    if (config.variable_alpha)
        return StepSequence::quasi_uniform(spec.horizon, tau, *config.variable_alpha, config.seed + row);
    return StepSequence::constant(spec.horizon, tau);
}

}  // namespace

std::vector<double> parse_steps(std::string_view text) {
    if (text.starts_with("ladder:")) {
        const auto parts = split(text.substr(7), ',');
        if (parts.size() != 2) throw InvalidArgument("ladder must read ladder:<start>,<count>");
        const double start = to_double(parts[0]);
        const double count = to_double(parts[1]);
        if (!(start > 0.0) || count < 1 || count != std::floor(count)) throw InvalidArgument("invalid ladder");
        std::vector<double> steps;
        for (int i = 0; i < static_cast<int>(count); ++i) steps.push_back(std::ldexp(start, -i));
        return steps;
    }
    std::vector<double> steps;
    for (auto part : split(text, ',')) {
        if (part.starts_with("1/")) {
            steps.push_back(1.0 / to_double(part.substr(2)));
        } else {
            steps.push_back(to_double(part));
        }
    }
    return steps;
}

std::vector<NormKind> parse_norms(std::string_view text) {
    std::vector<NormKind> norms;
    for (auto part : split(text, ',')) norms.push_back(NormKind::parse(part));
    return norms;
}

void SweepConfig::validate() const {
    if (steps.size() < 2) throw InvalidArgument("a sweep needs at least two step sizes");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (!(steps[i] > 0.0)) throw InvalidArgument("step sizes must be positive");
        if (i > 0 && !(steps[i] < steps[i - 1])) throw InvalidArgument("step sizes must be strictly decreasing");
    }
    if (norms.empty()) throw InvalidArgument("at least one norm is required");
    if (parallel < 1) throw InvalidArgument("parallelism must be at least 1");
    if (variable_alpha && !(*variable_alpha > 0.0 && *variable_alpha <= 1.0))
        throw InvalidArgument("variable-step alpha must lie in (0, 1]");
}

double observed_order(double e1, double e2, double tau1, double tau2) {
    return std::log(e1 / e2) / std::log(tau1 / tau2);
}

void compute_orders(ConvergenceReport& report) {
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        auto& row = report.rows[i];
        row.orders.assign(report.norms.size(), std::nullopt);
        if (i == 0 || row.failed || report.rows[i - 1].failed) continue;
        const auto& prev = report.rows[i - 1];
        for (std::size_t k = 0; k < report.norms.size(); ++k) {
            if (prev.errors[k] > 0.0 && row.errors[k] > 0.0)
                row.orders[k] = observed_order(prev.errors[k], row.errors[k], prev.step_size, row.step_size);
        }
    }
}

ConvergenceReport run_sweep(const ProblemSpec& spec, const SweepConfig& input) {
    SweepConfig config = input;
    if (config.correction.empty()) config.correction = spec.default_correction;
    if (config.steps.empty())
        for (int i = 0; i < spec.ladder_count; ++i) config.steps.push_back(std::ldexp(spec.ladder_start, -i));
    config.validate();
    if (config.method != "rk4") registry_get(config.method);
    if (!config.variable_alpha)
        for (double tau : config.steps) StepSequence::constant(spec.horizon, tau);

    const auto clock_start = std::chrono::steady_clock::now();
    const CorrectionField correction = make_correction(spec, config.correction);
    const auto recipe = effective_recipe(spec, config.reference);
    const auto ref = reference_solution(spec, correction, config.correction, config.reference, config.cache_dir);

    ConvergenceReport report;
    report.problem = spec.id;
    report.method = config.method;
    report.correction = config.correction;
    report.reference = recipe ? recipe->label() : "exact";
    report.step_kind = config.variable_alpha ? "quasi-uniform" : "constant";
    report.n = spec.n;
    report.horizon = spec.horizon;
    report.norms = config.norms;
    report.rows.resize(config.steps.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < config.steps.size(); i = next++) {
            ReportRow& row = report.rows[i];
            row.step_size = config.steps[i];
            try {
                const auto steps = make_steps(spec, config, row.step_size, i);
                row.step_count = steps.size();
                const auto u = run_problem(spec, correction, config.method, steps).final_state;
                row.errors = errors_against(u, ref, config.norms, spec.op);
            } catch (const std::exception& e) {
                row.failed = true;
                row.failure = e.what();
                row.errors.assign(config.norms.size(), std::numeric_limits<double>::quiet_NaN());
            }
        }
    };
    const unsigned threads = std::min<unsigned>(config.parallel, static_cast<unsigned>(config.steps.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    }
    compute_orders(report);

    if (config.floor_check) {
        std::vector<double> floor(config.norms.size(), 0.0);
        if (recipe) {
            ReferenceRecipe coarse = *recipe;
            coarse.tau *= 2.0;
            const auto ref2 = reference_solution(spec, correction, config.correction, coarse, config.cache_dir);
            floor = errors_against(ref2, ref, config.norms, spec.op);
        } else {
            // Same finest step on the grid with halved spacing; the difference
            // on shared nodes estimates the spatial error.
            const auto fine_spec = build_problem(spec.id, 2 * spec.n + 1);
            const auto fine_corr = make_correction(fine_spec, config.correction);
            const auto steps = make_steps(spec, config, config.steps.back(), config.steps.size() - 1);
            try {
                const auto coarse_u = run_problem(spec, correction, config.method, steps).final_state;
                const auto fine_u = run_problem(fine_spec, fine_corr, config.method, steps).final_state;
                floor = errors_against(coarse_u, restrict_fine(spec.layout(), fine_spec.layout(), fine_u),
                                       config.norms, spec.op);
            } catch (const Error&) {
                floor.assign(config.norms.size(), 0.0);
            }
        }
        const std::vector<double> zero(ref.size(), 0.0);
        const auto size = errors_against(ref, zero, config.norms, spec.op);
        for (std::size_t k = 0; k < floor.size(); ++k)
            floor[k] = std::max(floor[k], 100.0 * std::numeric_limits<double>::epsilon() * size[k]);
        report.floor = floor;
        for (auto& row : report.rows) {
            if (row.failed) continue;
            for (std::size_t k = 0; k < floor.size(); ++k)
                if (row.errors[k] < 10.0 * floor[k]) row.below_floor = true;
        }
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
    return report;
}

ConvergenceReport run_sweep(const SweepConfig& config) { return run_sweep(build_problem(config.problem, config.grid), config); }

}  // namespace explab::lab
