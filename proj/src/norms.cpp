#include "explab/norms.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "explab/errors.hpp"

namespace explab {

NormKind NormKind::xalpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("xalpha: alpha must lie in [0,1]");
    return {Type::xalpha, alpha};
}

NormKind NormKind::parse(std::string_view text) {
    if (text == "l1" || text == "L1") return l1();
    if (text == "l2" || text == "L2") return l2();
    if (text == "linf" || text == "Linf") return linf();
    constexpr std::string_view prefix = "xalpha:";
    if (text.starts_with(prefix)) {
        const std::string value(text.substr(prefix.size()));
        char* end = nullptr;
        const double alpha = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0') throw InvalidArgument("bad norm: " + std::string(text));
        return xalpha(alpha);
    }
    throw UnknownName(std::string(text));
}

std::string NormKind::name() const {
    switch (type) {
        case Type::l1: return "l1";
        case Type::l2: return "l2";
        case Type::linf: return "linf";
        case Type::xalpha: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "xalpha:%g", alpha);
            return buf;
        }
    }
    return "?";
}

double norm(std::span<const double> v, const NormKind& kind, const GridLayout& layout, const DiscreteOperator* op) {
    const std::size_t n = layout.state_size();
    if (v.size() != n) throw DimensionMismatch(n, v.size());

    switch (kind.type) {
        case NormKind::Type::l1: {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += layout.weights[i] * std::abs(v[i]);
            return acc;
        }
        case NormKind::Type::l2: {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += layout.weights[i] * v[i] * v[i];
            return std::sqrt(acc);
        }
        case NormKind::Type::linf: {
            double m = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                if (layout.in_linf[i]) m = std::max(m, std::abs(v[i]));
            return m;
        }
        case NormKind::Type::xalpha: break;
    }

    if (op == nullptr) throw UnsupportedOperator("xalpha norm requires an operator with spectral data");
    if (kind.alpha == 0.0) return norm(v, NormKind::l2(), layout, nullptr);

    std::vector<double> c(n);
    op->forward(v, c);
    const auto lambda = op->eigenvalues();
    // forward() is orthonormal for weights relative to the uniform cell weight.
    const double cell = layout.spatial_dim == 1 ? layout.dx : layout.dx * layout.dx;
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double shifted = op->omega() - lambda[k];
        if (!(shifted > 0.0)) throw InvalidArgument("xalpha norm: omega - lambda must be positive");
        const double s = std::pow(shifted, kind.alpha) * c[k];
        acc += s * s;
    }
    return std::sqrt(cell * acc);
}

}  // namespace explab
