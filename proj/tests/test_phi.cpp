#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "explab/discrete_operator.hpp"
#include "explab/errors.hpp"
#include "explab/phi.hpp"
#include "oracles.hpp"

using namespace explab;

TEST_CASE("phi at special points") {
    CHECK(phi(0, -1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    double fact = 1.0;
    for (int j = 1; j <= 4; ++j) {
        fact *= j;
        CHECK(phi(j, 0.0) == doctest::Approx(1.0 / fact).epsilon(1e-15));
    }
    CHECK(phi(1, -1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("phi_3(-0.7) against the integral representation") {
    CHECK(std::abs(phi(3, -0.7) - oracle::phi_integral(3, -0.7)) <= 1e-12 * phi(3, -0.7));
}

TEST_CASE("phi matches the integral representation across orders and magnitudes") {
    for (int j = 1; j <= kMaxPhiOrder; ++j) {
        for (double z : {-1e-10, -1e-3, -0.3, -0.99, -1.01, -2.0, -5.5, -9.0, -11.0, -40.0, -1e3}) {
            const double want = oracle::phi_integral(j, z, z < -100 ? 4000 : 200);
            CAPTURE(j);
            CAPTURE(z);
            CHECK(std::abs(phi(j, z) - want) <= 2e-15 * std::abs(want));
        }
    }
}

TEST_CASE("phi recurrence holds over the stiff range") {
    for (int i = 0; i <= 200; ++i) {
        const double z = -std::pow(10.0, -8.0 + 14.0 * i / 200.0);
        for (int j = 1; j <= kMaxPhiOrder; ++j) {
            const double prev = phi(j - 1, z);
            const double inv_fact = 1.0 / static_cast<double>(oracle::factorial(j - 1));
            CHECK(std::abs(z * phi(j, z) + inv_fact - prev) <= 1e-12 * std::max(std::abs(prev), inv_fact));
        }
    }
}

TEST_CASE("phi_all agrees with phi") {
    std::vector<double> out(kMaxPhiOrder + 1);
    for (double z : {0.0, -0.5, -1.0, -3.0, -8.0, -20.0, -1e5}) {
        phi_all(z, out);
        for (int j = 0; j <= kMaxPhiOrder; ++j) CHECK(out[static_cast<std::size_t>(j)] == doctest::Approx(phi(j, z)).epsilon(1e-14));
    }
}

TEST_CASE("phi rejects invalid orders") {
    CHECK_THROWS_AS(phi(-1, 0.0), InvalidArgument);
}

TEST_CASE("phi_apply on an eigenvector scales by the symbol") {
    const Grid1D grid{31};
    const auto op = build_laplacian_1d(grid);
    const PhiEvaluator ev(op);
    const std::size_t k = 4;
    std::vector<double> v(31);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(std::numbers::pi * static_cast<double>((k + 1) * (i + 1)) * grid.dx());
    const double lambda = dirichlet_eigenvalue(k + 1, grid.dx());
    for (int j = 0; j <= 4; ++j) {
        const auto got = ev.apply(j, 0.01, v);
        const double s = phi(j, 0.01 * lambda);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(got[i] == doctest::Approx(s * v[i]).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("phi_apply for j = 1 against entrywise quadrature in the eigenbasis") {
    const auto op = build_laplacian_1d(Grid1D{3, BoundaryKind::dirichlet, BoundaryKind::neumann});
    REQUIRE(op.dimension() == 4);
    const PhiEvaluator ev(op);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    std::vector<double> v(4), coeffs(4), want(4);
    for (double& x : v) x = nd(rng);
    const double tau = 0.05;
    op.forward(v, coeffs);
    const auto lambda = op.eigenvalues();
    for (std::size_t k = 0; k < 4; ++k) coeffs[k] *= oracle::phi_integral(1, tau * lambda[k]);
    op.inverse(coeffs, want);
    const auto got = ev.apply(1, tau, v);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-10);
}

TEST_CASE("the semigroup at tau near zero is the identity") {
    const auto op = build_laplacian_1d(Grid1D{63});
    const PhiEvaluator ev(op);
    std::vector<double> v(63);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = static_cast<double>(i + 1) / 64.0;
        v[i] = x * (1.0 - x) * (2.0 + x);
    }
    const auto got = ev.apply(0, 1e-12, v);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(got[i] - v[i]) <= 1e-9 * std::abs(v[i]) + 1e-12);
}
