#include "explab/elliptic.hpp"

#include <cmath>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

#include "explab/errors.hpp"

namespace explab {

namespace {

void require_dirichlet(const GridLayout& layout) {
    if (layout.spatial_dim == 1 &&
        (layout.sides[0] != BoundaryKind::dirichlet || layout.sides[1] != BoundaryKind::dirichlet))
        throw InvalidArgument("elliptic solve requires Dirichlet conditions on every side");
}

std::vector<double> solve_1d(const GridLayout& g, std::span<const double> rhs, std::span<const double> closure) {
    const std::size_t n = g.n;
    const double h2 = g.dx * g.dx;
    std::vector<double> z(closure.begin(), closure.end());
    // z_{i-1} - 2 z_i + z_{i+1} = h^2 rhs_i, i = 1..n
    std::vector<double> cprime(n), d(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = k + 1;
        double rhs_i = h2 * rhs[i];
        if (i == 1) rhs_i -= closure[0];
        if (i == n) rhs_i -= closure[n + 1];
        const double denom = -2.0 - (k > 0 ? cprime[k - 1] : 0.0);
        cprime[k] = 1.0 / denom;
        d[k] = (rhs_i - (k > 0 ? d[k - 1] : 0.0)) / denom;
    }
    z[n] = d[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) z[k + 1] = d[k] - cprime[k] * z[k + 2];
    return z;
}

std::vector<double> solve_2d(const GridLayout& g, std::span<const double> rhs, std::span<const double> closure) {
    const std::size_t n = g.n;
    const std::size_t m = n + 2;
    const auto dim = static_cast<Eigen::Index>(n * n);
    const double h2 = g.dx * g.dx;

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(5 * dim));
    Eigen::VectorXd b(dim);
    for (std::size_t iy = 1; iy <= n; ++iy) {
        for (std::size_t ix = 1; ix <= n; ++ix) {
            const auto row = static_cast<Eigen::Index>((iy - 1) * n + (ix - 1));
            // -(sum of neighbours - 4 z) = -h^2 rhs
            double acc = -h2 * rhs[iy * m + ix];
            entries.emplace_back(row, row, 4.0);
            const std::array<std::pair<std::size_t, std::size_t>, 4> nb{
                {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}}};
            for (auto [jx, jy] : nb) {
                if (jx == 0 || jy == 0 || jx == n + 1 || jy == n + 1) {
                    acc += closure[jy * m + jx];
                } else {
                    entries.emplace_back(row, static_cast<Eigen::Index>((jy - 1) * n + (jx - 1)), -1.0);
                }
            }
            b[row] = acc;
        }
    }
    Eigen::SparseMatrix<double> mat(dim, dim);
    mat.setFromTriplets(entries.begin(), entries.end());

    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(kEllipticTolerance);
    cg.setMaxIterations(20 * dim);
    cg.compute(mat);
    Eigen::VectorXd x = cg.solve(b);
    const double bnorm = b.norm();
    auto relative_residual = [&] { return bnorm > 0.0 ? (mat * x - b).norm() / bnorm : (mat * x).norm(); };
    // Refine on the explicitly computed residual.
    double residual = relative_residual();
    for (int pass = 0; pass < 3 && cg.info() == Eigen::Success && residual > 1e-3 * kEllipticTolerance; ++pass) {
        x += cg.solve(Eigen::VectorXd(b - mat * x));
        residual = relative_residual();
    }
    if (cg.info() != Eigen::Success || residual > 10.0 * kEllipticTolerance)
        throw SolverError("conjugate gradient did not converge", residual);

    std::vector<double> z(closure.begin(), closure.end());
    for (std::size_t iy = 1; iy <= n; ++iy)
        for (std::size_t ix = 1; ix <= n; ++ix)
            z[iy * m + ix] = x[static_cast<Eigen::Index>((iy - 1) * n + (ix - 1))];
    return z;
}

}  // namespace

std::vector<double> solve_dirichlet_poisson(const GridLayout& layout, std::span<const double> rhs_closure,
                                            std::span<const double> closure) {
    require_dirichlet(layout);
    if (rhs_closure.size() != layout.closure_size) throw DimensionMismatch(layout.closure_size, rhs_closure.size());
    if (closure.size() != layout.closure_size) throw DimensionMismatch(layout.closure_size, closure.size());
    return layout.spatial_dim == 1 ? solve_1d(layout, rhs_closure, closure) : solve_2d(layout, rhs_closure, closure);
}

std::vector<double> closure_laplacian(const GridLayout& layout, std::span<const double> closure,
                                      bool one_sided_boundary) {
    if (closure.size() != layout.closure_size) throw DimensionMismatch(layout.closure_size, closure.size());
    const double inv = 1.0 / (layout.dx * layout.dx);
    std::vector<double> out(layout.closure_size, 0.0);
    if (layout.spatial_dim == 1) {
        const std::size_t last = layout.n + 1;
        for (std::size_t i = 1; i < last; ++i) out[i] = (closure[i - 1] - 2.0 * closure[i] + closure[i + 1]) * inv;
        if (one_sided_boundary) {
            if (layout.n < 2) throw InvalidArgument("one-sided stencil needs at least two interior points");
            out[0] = (2.0 * closure[0] - 5.0 * closure[1] + 4.0 * closure[2] - closure[3]) * inv;
            out[last] = (2.0 * closure[last] - 5.0 * closure[last - 1] + 4.0 * closure[last - 2] - closure[last - 3]) * inv;
        }
        return out;
    }
    if (one_sided_boundary) throw InvalidArgument("one-sided boundary Laplacian is only available in 1D");
    const std::size_t m = layout.n + 2;
    for (std::size_t iy = 1; iy + 1 < m; ++iy)
        for (std::size_t ix = 1; ix + 1 < m; ++ix) {
            const std::size_t k = iy * m + ix;
            out[k] = (closure[k - 1] + closure[k + 1] + closure[k - m] + closure[k + m] - 4.0 * closure[k]) * inv;
        }
    return out;
}

}  // namespace explab
