#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "explab/errors.hpp"
#include "explab/lab/acceptance.hpp"
#include "explab/lab/report.hpp"
#include "explab/lab/sweep.hpp"

namespace {

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string::npos ? text.size() : comma;
        if (end > start) out.push_back(text.substr(start, end - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

// results.csv with method "krogstad" -> results-krogstad.csv
std::string suffixed(const std::string& path, const std::string& method) {
    std::filesystem::path p(path);
    std::string tag = method;
    std::replace(tag.begin(), tag.end(), ':', '-');
    return (p.parent_path() / (p.stem().string() + "-" + tag + p.extension().string())).string();
}

// The config option belongs to the top-level app; accept it after the subcommand too.
std::vector<std::string> hoist_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i].rfind("--config=", 0) == 0) {
            std::rotate(args.begin(), args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 1);
        } else if (args[i] == "--config" && i + 1 < args.size()) {
            std::rotate(args.begin(), args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            ++i;
        }
    }
    std::reverse(args.begin(), args.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace explab;
    CLI::App app{"Exponential integrators with boundary corrections: convergence studies"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a step-size sweep and report errors and orders");
    app.set_config("--config", "", "INI file; run options go under a [run] section");
    std::string problem = "ex1", methods = "gauss:2", correction, steps, norms = "l2", out, reference, cache_dir;
    std::size_t grid = 0;
    unsigned parallel = 1;
    double alpha = 0.0;
    std::uint64_t seed = 42;
    bool no_floor = false;
    run->add_option("--problem", problem, "ex1..ex5")->capture_default_str();
    run->add_option("--method", methods, "method name, or a comma list to compare")->capture_default_str()->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    run->add_option("--correction", correction, "correction strategy (default: the problem's)");
    run->add_option("--steps", steps, "comma list of step sizes or ladder:<start>,<count>")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    run->add_option("--norms", norms, "comma list of l1, l2, linf, xalpha:<a>")->capture_default_str()->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    run->add_option("--grid", grid, "interior points per dimension (default: the problem's)");
    run->add_option("--out", out, "CSV output path");
    run->add_option("--reference", reference, "reference recipe method:step, e.g. krogstad:1/8000");
    run->add_option("--parallel", parallel, "concurrent rows")->capture_default_str()->check(CLI::Range(1u, 256u));
    run->add_option("--variable-alpha", alpha, "quasi-uniform random steps with this alpha")->check(CLI::Range(0.0, 1.0));
    run->add_option("--seed", seed, "seed for the random step sequence")->capture_default_str();
    run->add_option("--cache-dir", cache_dir, "directory for cached reference solutions");
    run->add_flag("--no-floor", no_floor, "skip the error-floor estimate");

    auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
    std::vector<int> only;
    std::string verify_cache;
    unsigned verify_parallel = 1;
    verify->add_option("--only", only, "criterion numbers to run");
    verify->add_option("--cache-dir", verify_cache, "directory for cached reference solutions");
    verify->add_option("--parallel", verify_parallel, "concurrent rows per sweep")->check(CLI::Range(1u, 256u));

    auto* list = app.add_subcommand("list", "list problems, methods and corrections");

    try {
        app.parse(hoist_config(argc, argv));
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*list) {
            for (const auto& id : lab::problem_ids()) {
                const auto spec = lab::build_problem(id);
                std::cout << id << "  " << spec.title << "\n    n=" << spec.n << "  T=" << spec.horizon
                          << "  reference=" << (spec.reference ? spec.reference->label() : std::string("exact"))
                          << "\n    corrections:";
                for (const auto& c : spec.corrections) std::cout << ' ' << c;
                std::cout << '\n';
            }
            std::cout << "methods: euler strehmel-weiner krogstad gauss:<s> radau:<s> lobatto:<s>\n";
            return 0;
        }

        if (*verify) {
            lab::AcceptanceOptions options;
            options.only = {only.begin(), only.end()};
            options.cache_dir = verify_cache;
            options.parallel = verify_parallel;
            const auto results = lab::run_acceptance(std::cout, options);
            const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
            std::cout << passed << "/" << results.size() << " criteria passed\n";
            return passed == static_cast<long>(results.size()) ? 0 : 1;
        }

        const auto spec = lab::build_problem(problem, grid);
        lab::SweepConfig base;
        base.problem = problem;
        base.correction = correction;
        base.steps = steps.empty() ? std::vector<double>{} : lab::parse_steps(steps);
        base.norms = lab::parse_norms(norms);
        base.grid = grid;
        if (!reference.empty()) base.reference = lab::ReferenceRecipe::parse(reference);
        base.parallel = parallel;
        base.cache_dir = cache_dir;
        if (run->count("--variable-alpha") > 0) base.variable_alpha = alpha;
        base.seed = seed;
        base.floor_check = !no_floor;

        const auto method_list = split(methods);
        if (method_list.empty()) throw InvalidArgument("--method is empty");
        std::vector<lab::ConvergenceReport> reports;
        int failed = 0;
        for (const auto& m : method_list) {
            auto cfg = base;
            cfg.method = m;
            auto report = lab::run_sweep(spec, cfg);
            lab::print_table(report, std::cout);
            std::cout << '\n';
            if (!out.empty()) lab::write_csv_file(report, method_list.size() > 1 ? suffixed(out, m) : out);
            failed += static_cast<int>(std::count_if(report.rows.begin(), report.rows.end(),
                                                     [](const auto& r) { return r.failed; }));
            reports.push_back(std::move(report));
        }
        if (reports.size() > 1) lab::print_side_by_side(reports, reports.front().norms.front(), std::cout);
        return failed > 0 ? 2 : 0;
    } catch (const explab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
