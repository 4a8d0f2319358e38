#include "explab/discrete_operator.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "explab/errors.hpp"

namespace explab {

namespace {

// The FFTW planner is not reentrant; execution with new arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_plan make_dst_plan(int n, int dims) {
    std::lock_guard lock(planner_mutex());
    std::vector<double> scratch(static_cast<std::size_t>(dims == 1 ? n : n * n));
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    if (dims == 1) return fftw_plan_r2r_1d(n, scratch.data(), scratch.data(), FFTW_RODFT00, flags);
    return fftw_plan_r2r_2d(n, n, scratch.data(), scratch.data(), FFTW_RODFT00, FFTW_RODFT00, flags);
}

}  // namespace

struct DiscreteOperator::Impl {
    GridLayout layout;
    OperatorStructure structure = OperatorStructure::sine_diagonalizable;
    std::vector<double> eigenvalues;

    // sine and Kronecker-sum paths
    fftw_plan plan = nullptr;
    double dst_scale = 1.0;

    // dense path: A = W^{-1/2} Q diag(eigenvalues) Q^T W^{1/2}
    Eigen::MatrixXd basis;
    Eigen::VectorXd sqrt_weight;

    Impl() = default;
    Impl(const Impl&) = delete;
    Impl& operator=(const Impl&) = delete;
    ~Impl() {
        if (plan != nullptr) {
            std::lock_guard lock(planner_mutex());
            fftw_destroy_plan(plan);
        }
    }

    void dst(std::span<const double> in, std::span<double> out) const {
        if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
        fftw_execute_r2r(plan, out.data(), out.data());
        for (double& x : out) x *= dst_scale;
    }
};

double dirichlet_eigenvalue(std::size_t k, double dx) {
    const double s = std::sin(static_cast<double>(k) * std::numbers::pi * dx / 2.0);
    return -4.0 / (dx * dx) * s * s;
}

DiscreteOperator build_laplacian_1d(const Grid1D& grid) {
    if (grid.n_interior < 2) throw InvalidArgument("build_laplacian_1d: n_interior must be at least 2");
    if (grid.left != BoundaryKind::dirichlet)
        throw InvalidArgument("build_laplacian_1d: left boundary must be Dirichlet");

    auto impl = std::make_shared<DiscreteOperator::Impl>();
    impl->layout = GridLayout::from(grid);
    const std::size_t n = grid.n_interior;
    const double dx = grid.dx();

    if (grid.right == BoundaryKind::dirichlet) {
        impl->structure = OperatorStructure::sine_diagonalizable;
        impl->eigenvalues.resize(n);
        for (std::size_t k = 0; k < n; ++k) impl->eigenvalues[k] = dirichlet_eigenvalue(k + 1, dx);
        impl->plan = make_dst_plan(static_cast<int>(n), 1);
        impl->dst_scale = 1.0 / std::sqrt(2.0 * static_cast<double>(n + 1));
    } else {
        impl->structure = OperatorStructure::dense_symmetric;
        const std::size_t dim = n + 1;
        impl->sqrt_weight.resize(static_cast<Eigen::Index>(dim));

        // Solved in extended precision: the basis is applied twice per stage
        // over thousands of steps, so its orthogonality defect accumulates.
        using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
        const auto d = static_cast<Eigen::Index>(dim);
        const long double invl = 1.0L / (static_cast<long double>(dx) * dx);
        MatrixL sym = MatrixL::Zero(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            sym(i, i) = -2.0L * invl;
            if (i > 0) sym(i, i - 1) = invl;
            if (i + 1 < d) sym(i, i + 1) = invl;
        }
        // W^{1/2} A W^{-1/2} with W = diag(1, ..., 1, 1/2) is symmetric.
        const Eigen::Index last = d - 1;
        sym(last, last - 1) = std::sqrt(2.0L) * invl;
        sym(last - 1, last) = std::sqrt(2.0L) * invl;
        for (std::size_t k = 0; k < dim; ++k)
            impl->sqrt_weight[static_cast<Eigen::Index>(k)] = std::sqrt(impl->layout.weights[k] / dx);

        Eigen::SelfAdjointEigenSolver<MatrixL> solver(sym);
        if (solver.info() != Eigen::Success) throw Error("build_laplacian_1d: eigensolver failed");
        impl->basis = solver.eigenvectors().cast<double>();
        impl->eigenvalues.resize(dim);
        for (std::size_t k = 0; k < dim; ++k) impl->eigenvalues[k] = static_cast<double>(solver.eigenvalues()[static_cast<Eigen::Index>(k)]);
    }
    return DiscreteOperator(std::move(impl));
}

DiscreteOperator build_laplacian_2d(const Grid2D& grid) {
    if (grid.n_per_dim < 2) throw InvalidArgument("build_laplacian_2d: n_per_dim must be at least 2");
    auto impl = std::make_shared<DiscreteOperator::Impl>();
    impl->layout = GridLayout::from(grid);
    impl->structure = OperatorStructure::kronecker_sum;
    const std::size_t n = grid.n_per_dim;
    const double dx = grid.dx();
    std::vector<double> lambda(n);
    for (std::size_t k = 0; k < n; ++k) lambda[k] = dirichlet_eigenvalue(k + 1, dx);
    impl->eigenvalues.resize(n * n);
    for (std::size_t iy = 0; iy < n; ++iy)
        for (std::size_t ix = 0; ix < n; ++ix) impl->eigenvalues[iy * n + ix] = lambda[iy] + lambda[ix];
    impl->plan = make_dst_plan(static_cast<int>(n), 2);
    impl->dst_scale = 1.0 / (2.0 * static_cast<double>(n + 1));
    return DiscreteOperator(std::move(impl));
}

std::size_t DiscreteOperator::dimension() const { return impl_->layout.state_size(); }
OperatorStructure DiscreteOperator::structure() const { return impl_->structure; }
const GridLayout& DiscreteOperator::layout() const { return impl_->layout; }
std::span<const double> DiscreteOperator::eigenvalues() const { return impl_->eigenvalues; }

DiscreteOperator DiscreteOperator::shifted(double omega) const {
    DiscreteOperator copy(*this);
    copy.omega_ = omega;
    return copy;
}

void DiscreteOperator::apply(std::span<const double> v, std::span<double> out) const {
    const std::size_t dim = dimension();
    if (v.size() != dim) throw DimensionMismatch(dim, v.size());
    if (out.size() != dim) throw DimensionMismatch(dim, out.size());
    const GridLayout& g = impl_->layout;
    const double inv = 1.0 / (g.dx * g.dx);

    if (g.spatial_dim == 1) {
        const bool neumann_end = g.sides[1] == BoundaryKind::neumann;
        for (std::size_t i = 0; i < dim; ++i) {
            const double left = i > 0 ? v[i - 1] : 0.0;
            if (neumann_end && i + 1 == dim) {
                out[i] = (2.0 * left - 2.0 * v[i]) * inv;
                continue;
            }
            const double right = i + 1 < dim ? v[i + 1] : 0.0;
            out[i] = (left - 2.0 * v[i] + right) * inv;
        }
        return;
    }

    const std::size_t n = g.n;
    for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
            const std::size_t k = iy * n + ix;
            double acc = -4.0 * v[k];
            if (ix > 0) acc += v[k - 1];
            if (ix + 1 < n) acc += v[k + 1];
            if (iy > 0) acc += v[k - n];
            if (iy + 1 < n) acc += v[k + n];
            out[k] = acc * inv;
        }
    }
}

std::vector<double> DiscreteOperator::apply(std::span<const double> v) const {
    std::vector<double> out(dimension());
    apply(v, out);
    return out;
}

void DiscreteOperator::forward(std::span<const double> v, std::span<double> coeffs) const {
    const std::size_t dim = dimension();
    if (v.size() != dim) throw DimensionMismatch(dim, v.size());
    if (coeffs.size() != dim) throw DimensionMismatch(dim, coeffs.size());
    if (impl_->structure != OperatorStructure::dense_symmetric) {
        impl_->dst(v, coeffs);
        return;
    }
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::VectorXd scaled = Eigen::Map<const Eigen::VectorXd>(v.data(), n).cwiseProduct(impl_->sqrt_weight);
    Eigen::Map<Eigen::VectorXd>(coeffs.data(), n).noalias() = impl_->basis.transpose() * scaled;
}

void DiscreteOperator::inverse(std::span<const double> coeffs, std::span<double> v) const {
    const std::size_t dim = dimension();
    if (v.size() != dim) throw DimensionMismatch(dim, v.size());
    if (coeffs.size() != dim) throw DimensionMismatch(dim, coeffs.size());
    if (impl_->structure != OperatorStructure::dense_symmetric) {
        // The orthonormal DST-I is an involution.
        impl_->dst(coeffs, v);
        return;
    }
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::VectorXd tmp = impl_->basis * Eigen::Map<const Eigen::VectorXd>(coeffs.data(), n);
    Eigen::Map<Eigen::VectorXd>(v.data(), n) = tmp.cwiseQuotient(impl_->sqrt_weight);
}

Eigen::MatrixXd DiscreteOperator::assemble() const {
    const std::size_t dim = dimension();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::vector<double> e(dim, 0.0), col(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        e[j] = 1.0;
        apply(e, col);
        for (std::size_t i = 0; i < dim; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
        e[j] = 0.0;
    }
    return m;
}

}  // namespace explab
