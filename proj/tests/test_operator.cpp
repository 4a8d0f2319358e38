#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include "explab/discrete_operator.hpp"
#include "explab/errors.hpp"
#include "explab/norms.hpp"

using namespace explab;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

}  // namespace

TEST_CASE("1D Dirichlet stencil for n = 3") {
    const auto op = build_laplacian_1d(Grid1D{3});
    const auto m = op.assemble();
    const double inv = 16.0;
    for (int i = 0; i < 3; ++i) {
        CHECK(m(i, i) == doctest::Approx(-2.0 * inv));
        if (i > 0) CHECK(m(i, i - 1) == doctest::Approx(inv));
        if (i < 2) CHECK(m(i, i + 1) == doctest::Approx(inv));
    }
    CHECK(m(0, 2) == 0.0);
    const auto lambda = op.eigenvalues();
    const double smallest = *std::max_element(lambda.begin(), lambda.end());
    const double s = std::sin(std::numbers::pi * 0.25 / 2.0);
    CHECK(smallest == doctest::Approx(-4.0 * inv * s * s).epsilon(1e-14));
}

TEST_CASE("Dirichlet-Neumann eigenvalues against a dense eigensolve") {
    const auto op = build_laplacian_1d(Grid1D{64, BoundaryKind::dirichlet, BoundaryKind::neumann});
    CHECK(op.structure() == OperatorStructure::dense_symmetric);
    CHECK(op.dimension() == 65);
    Eigen::EigenSolver<Eigen::MatrixXd> es(op.assemble());
    std::vector<double> want;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        CHECK(std::abs(es.eigenvalues()[i].imag()) < 1e-8);
        want.push_back(es.eigenvalues()[i].real());
    }
    std::vector<double> got(op.eigenvalues().begin(), op.eigenvalues().end());
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    for (std::size_t k = 0; k < got.size(); ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-9 * std::abs(want[k]));
}

TEST_CASE("spectral transforms invert and diagonalize") {
    for (const auto& op : {build_laplacian_1d(Grid1D{40}),
                           build_laplacian_1d(Grid1D{40, BoundaryKind::dirichlet, BoundaryKind::neumann}),
                           build_laplacian_2d(Grid2D{12})}) {
        const auto v = random_vector(op.dimension(), 5);
        std::vector<double> c(v.size()), back(v.size()), scaled(v.size());
        op.forward(v, c);
        op.inverse(c, back);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(back[i] == doctest::Approx(v[i]).epsilon(1e-12).scale(1.0));
        for (std::size_t k = 0; k < c.size(); ++k) c[k] *= op.eigenvalues()[k];
        op.inverse(c, scaled);
        const auto av = op.apply(v);
        double scale = 0.0;
        for (double x : av) scale = std::max(scale, std::abs(x));
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(scaled[i] - av[i]) <= 1e-11 * scale);
    }
}

TEST_CASE("2D operator for n = 2") {
    const auto op = build_laplacian_2d(Grid2D{2});
    const auto m = op.assemble();
    const double inv = 9.0;
    REQUIRE(m.rows() == 4);
    for (int i = 0; i < 4; ++i) CHECK(m(i, i) == doctest::Approx(-4.0 * inv));
    CHECK(m(0, 1) == doctest::Approx(inv));
    CHECK(m(0, 2) == doctest::Approx(inv));
    CHECK(m(0, 3) == 0.0);
    CHECK(m(1, 2) == 0.0);
}

TEST_CASE("2D operator on outer products of 1D eigenvectors") {
    const std::size_t n = 10;
    const auto op = build_laplacian_2d(Grid2D{n});
    const double dx = 1.0 / (n + 1);
    const std::size_t j = 3, k = 7;
    std::vector<double> v(n * n);
    for (std::size_t iy = 0; iy < n; ++iy)
        for (std::size_t ix = 0; ix < n; ++ix)
            v[iy * n + ix] = std::sin(std::numbers::pi * j * (ix + 1) * dx) * std::sin(std::numbers::pi * k * (iy + 1) * dx);
    const double lambda = dirichlet_eigenvalue(j, dx) + dirichlet_eigenvalue(k, dx);
    const auto av = op.apply(v);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(av[i] == doctest::Approx(lambda * v[i]).scale(std::abs(lambda)).epsilon(1e-12));
}

TEST_CASE("2D apply against a sparse matrix-vector product") {
    const std::size_t n = 16;
    const auto op = build_laplacian_2d(Grid2D{n});
    const double inv = static_cast<double>((n + 1) * (n + 1));
    std::vector<Eigen::Triplet<double>> t;
    auto id = [n](std::size_t ix, std::size_t iy) { return static_cast<int>(iy * n + ix); };
    for (std::size_t iy = 0; iy < n; ++iy)
        for (std::size_t ix = 0; ix < n; ++ix) {
            t.emplace_back(id(ix, iy), id(ix, iy), -4.0 * inv);
            if (ix > 0) t.emplace_back(id(ix, iy), id(ix - 1, iy), inv);
            if (ix + 1 < n) t.emplace_back(id(ix, iy), id(ix + 1, iy), inv);
            if (iy > 0) t.emplace_back(id(ix, iy), id(ix, iy - 1), inv);
            if (iy + 1 < n) t.emplace_back(id(ix, iy), id(ix, iy + 1), inv);
        }
    Eigen::SparseMatrix<double> m(static_cast<int>(n * n), static_cast<int>(n * n));
    m.setFromTriplets(t.begin(), t.end());
    const auto v = random_vector(n * n, 11);
    const Eigen::VectorXd want = m * Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    const auto got = op.apply(v);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(got[i] - want[static_cast<Eigen::Index>(i)]) <= 1e-11 * want.cwiseAbs().maxCoeff());
}

TEST_CASE("builders reject degenerate grids") {
    CHECK_THROWS_AS(build_laplacian_1d(Grid1D{1}), InvalidArgument);
    CHECK_THROWS_AS(build_laplacian_1d(Grid1D{8, BoundaryKind::neumann, BoundaryKind::dirichlet}), InvalidArgument);
    CHECK_THROWS_AS(build_laplacian_2d(Grid2D{1}), InvalidArgument);
    const auto op = build_laplacian_1d(Grid1D{8});
    std::vector<double> v(7), out(8);
    CHECK_THROWS_AS(op.apply(v, out), DimensionMismatch);
}

TEST_CASE("the operator is dissipative") {
    for (const auto& op : {build_laplacian_1d(Grid1D{30}),
                           build_laplacian_1d(Grid1D{30, BoundaryKind::dirichlet, BoundaryKind::neumann}),
                           build_laplacian_2d(Grid2D{8})}) {
        for (double l : op.eigenvalues()) CHECK(l < 0.0);
    }
}

TEST_CASE("norms") {
    const auto op = build_laplacian_1d(Grid1D{3});
    const std::vector<double> ones(3, 1.0);
    CHECK(norm(ones, NormKind::l2(), op) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));
    CHECK(norm(ones, NormKind::l1(), op) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(norm(ones, NormKind::linf(), op) == 1.0);

    const auto big = build_laplacian_1d(Grid1D{31}).shifted(1.0);
    const auto v = random_vector(31, 2);
    CHECK(norm(v, NormKind::xalpha(0.0), big) == doctest::Approx(norm(v, NormKind::l2(), big)).epsilon(1e-13));
    const double dx = 1.0 / 32.0;
    std::vector<double> e(31);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::sin(std::numbers::pi * 3.0 * static_cast<double>(i + 1) * dx);
    const double want = std::sqrt(1.0 - dirichlet_eigenvalue(3, dx)) * norm(e, NormKind::l2(), big);
    CHECK(norm(e, NormKind::xalpha(0.5), big) == doctest::Approx(want).epsilon(1e-12));
    CHECK_THROWS(norm(v, NormKind::xalpha(0.5), big.layout()));
}

TEST_CASE("Neumann endpoint gets half weight and is excluded from the max norm") {
    const auto op = build_laplacian_1d(Grid1D{3, BoundaryKind::dirichlet, BoundaryKind::neumann});
    std::vector<double> v{0.0, 0.0, 0.0, 5.0};
    CHECK(norm(v, NormKind::linf(), op) == 0.0);
    CHECK(norm(v, NormKind::l1(), op) == doctest::Approx(5.0 * 0.125));
}

TEST_CASE("norm names round-trip") {
    for (const char* name : {"l1", "l2", "linf", "xalpha:0.5"}) CHECK(NormKind::parse(name).name() == name);
    CHECK_THROWS(NormKind::parse("h1"));
}
