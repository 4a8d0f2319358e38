#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "explab/errors.hpp"
#include "explab/lab/reference.hpp"
#include "explab/lab/report.hpp"
#include "explab/lab/sweep.hpp"

using namespace explab;
using namespace explab::lab;

namespace {

SweepConfig small_config() {
    SweepConfig c;
    c.problem = "ex1";
    c.method = "gauss:2";
    c.correction = "analytic:affine";
    c.steps = {0.1, 0.05, 0.025, 0.0125};
    c.norms = {NormKind::l1(), NormKind::l2(), NormKind::linf()};
    c.grid = 64;
    return c;
}

std::string body(const ConvergenceReport& r) {
    std::ostringstream os;
    write_csv(r, os, "2000-01-01T00:00:00Z");
    return os.str();
}

}  // namespace

TEST_CASE("step and norm parsing") {
    CHECK(parse_steps("0.1,0.05") == std::vector<double>{0.1, 0.05});
    CHECK(parse_steps("1/10, 1/20") == std::vector<double>{0.1, 0.05});
    CHECK(parse_steps("ladder:0.1,3") == std::vector<double>{0.1, 0.05, 0.025});
    CHECK_THROWS_AS(parse_steps("ladder:0.1"), InvalidArgument);
    CHECK_THROWS_AS(parse_steps("0.1,abc"), InvalidArgument);
    const auto norms = parse_norms("l1,linf,xalpha:0.5");
    REQUIRE(norms.size() == 3);
    CHECK(norms[2] == NormKind::xalpha(0.5));
    const auto r = ReferenceRecipe::parse("krogstad:1/8000");
    CHECK(r.method == "krogstad");
    CHECK(r.tau == doctest::Approx(1.0 / 8000.0));
    CHECK_THROWS(ReferenceRecipe::parse("krogstad"));
}

TEST_CASE("config validation") {
    auto c = small_config();
    CHECK_NOTHROW(c.validate());
    c.steps = {0.1, 0.1};
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c.steps = {0.1};
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c.steps = {0.05, 0.1};
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("observed order") {
    CHECK(observed_order(16.0, 1.0, 0.2, 0.1) == doctest::Approx(4.0));
    CHECK(observed_order(9.0, 1.0, 0.3, 0.1) == doctest::Approx(2.0));
}

TEST_CASE("sweep on the exact-solution problem") {
    const auto r = run_sweep(small_config());
    REQUIRE(r.rows.size() == 4);
    CHECK(r.reference == "exact");
    CHECK_FALSE(r.rows[0].orders[0].has_value());
    for (const auto& row : r.rows) {
        CHECK_FALSE(row.failed);
        for (double e : row.errors) CHECK(e >= 0.0);
    }
    CHECK(*r.rows.back().orders[2] == doctest::Approx(3.0).epsilon(0.05));
    CHECK(r.floor.size() == 3);
}

TEST_CASE("determinism and parallel soundness") {
    auto c = small_config();
    const auto a = body(run_sweep(c));
    CHECK(body(run_sweep(c)) == a);
    c.parallel = 8;
    CHECK(body(run_sweep(c)) == a);
}

TEST_CASE("CSV layout and round trip") {
    const auto r = run_sweep(small_config());
    std::ostringstream os;
    write_csv(r, os, "2000-01-01T00:00:00Z");
    std::istringstream lines(os.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("# explab v", 0) == 0);
    CHECK(line.ends_with(" 2000-01-01T00:00:00Z"));
    std::getline(lines, line);
    CHECK(line.rfind("#", 0) == 0);
    std::getline(lines, line);
    CHECK(line == "step_size,l1_error,l1_order,l2_error,l2_order,linf_error,linf_order");
    std::getline(lines, line);
    CHECK(line.find(",,") != std::string::npos);

    std::istringstream in(os.str());
    const auto table = read_csv(in);
    REQUIRE(table.rows.size() == 4);
    const auto step = table.column("step_size");
    for (const char* n : {"l1", "l2", "linf"}) {
        const auto e = table.column(std::string(n) + "_error");
        const auto o = table.column(std::string(n) + "_order");
        CHECK_FALSE(table.rows[0][o].has_value());
        for (std::size_t i = 1; i < table.rows.size(); ++i) {
            const double want = observed_order(*table.rows[i - 1][e], *table.rows[i][e], *table.rows[i - 1][step], *table.rows[i][step]);
            CHECK(std::abs(*table.rows[i][o] - want) <= 1e-9);
        }
    }
}

TEST_CASE("single-row report writes an empty order") {
    ConvergenceReport r;
    r.problem = "ex1";
    r.method = "gauss:2";
    r.correction = "analytic:affine";
    r.reference = "exact";
    r.norms = {NormKind::l2()};
    r.rows.push_back({0.1, 10, {1.5e-6}, {std::nullopt}, false, "", false});
    std::ostringstream os;
    write_csv(r, os, "t");
    CHECK(os.str().ends_with("1.0000000000000001e-01,1.5000000000000000e-06,\n"));
    std::ostringstream table;
    print_table(r, table);
    CHECK(table.str().find("1.5") != std::string::npos);
}

TEST_CASE("failed rows are recorded and the sweep continues") {
    auto c = small_config();
    c.problem = "ex3";
    c.method = "euler";
    c.correction = "analytic:caloric";
    c.grid = 32;
    c.steps = {0.5, 0.25};
    c.reference = ReferenceRecipe{"krogstad", 1.0 / 400.0};
    c.norms = {NormKind::l2()};
    c.floor_check = false;
    const auto r = run_sweep(c);
    REQUIRE(r.rows.size() == 2);
    for (const auto& row : r.rows) {
        if (row.failed) {
            CHECK(std::isnan(row.errors[0]));
            CHECK_FALSE(row.failure.empty());
        }
    }
}

TEST_CASE("reference solutions are cached on disk") {
    const auto dir = std::filesystem::temp_directory_path() / "explab-test-cache";
    std::filesystem::remove_all(dir);
    const auto spec = build_problem("ex3", 32);
    const auto corr = make_correction(spec, "analytic:caloric");
    const ReferenceRecipe recipe{"krogstad", 1.0 / 400.0};
    const auto a = reference_solution(spec, corr, "analytic:caloric", recipe, dir.string());
    CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == 1);
    const auto b = reference_solution(spec, corr, "analytic:caloric", recipe, dir.string());
    CHECK(a == b);
    CHECK(reference_key(spec, "analytic:caloric", recipe) != reference_key(spec, "analytic:affine", recipe));
    std::filesystem::remove_all(dir);

    const auto ex1 = build_problem("ex1", 32);
    const auto exact = reference_solution(ex1, make_correction(ex1, "analytic:affine"), "analytic:affine");
    CHECK(exact == exact_state(ex1, ex1.horizon));
}

TEST_CASE("reference-independence on the time-invariant problem") {
    auto c = small_config();
    c.problem = "ex2";
    c.correction = "analytic:quadratic";
    c.grid = 128;
    c.steps = {0.05, 0.025, 0.0125};
    c.norms = {NormKind::l2()};
    c.floor_check = false;
    c.reference = ReferenceRecipe{"gauss:2", 1.0 / 4000.0};
    const auto a = run_sweep(c);
    c.reference = ReferenceRecipe{"krogstad", 1.0 / 4000.0};
    const auto b = run_sweep(c);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        if (a.rows[i].errors[0] <= 1e-10) continue;
        CHECK(std::abs(a.rows[i].errors[0] - b.rows[i].errors[0]) <= 0.01 * a.rows[i].errors[0]);
    }
}

TEST_CASE("quasi-uniform sweep labels rows by tau_max") {
    auto c = small_config();
    c.variable_alpha = 0.5;
    c.norms = {NormKind::linf()};
    const auto r = run_sweep(c);
    CHECK(r.step_kind != "constant");
    for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(r.rows[i].step_size == c.steps[i]);
}
