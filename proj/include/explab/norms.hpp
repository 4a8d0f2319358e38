#pragma once

#include <span>
#include <string>
#include <string_view>

#include "explab/discrete_operator.hpp"
#include "explab/grid.hpp"

namespace explab {

struct NormKind {
    enum class Type { l1, l2, linf, xalpha };
    Type type = Type::l2;
    double alpha = 0.0;

    static NormKind l1() { return {Type::l1, 0.0}; }
    static NormKind l2() { return {Type::l2, 0.0}; }
    static NormKind linf() { return {Type::linf, 0.0}; }
    static NormKind xalpha(double alpha);

    /// "l1", "l2", "linf", "xalpha:<a>".
    static NormKind parse(std::string_view text);
    std::string name() const;

    bool operator==(const NormKind&) const = default;
};

/// Discrete norms weighted by the layout's quadrature weights. The fractional
/// norm ||(omega - A)^alpha v||_2 is evaluated spectrally and throws
/// UnsupportedOperator when no operator is supplied.
double norm(std::span<const double> v, const NormKind& kind, const GridLayout& layout,
            const DiscreteOperator* op = nullptr);

inline double norm(std::span<const double> v, const NormKind& kind, const DiscreteOperator& op) {
    return norm(v, kind, op.layout(), &op);
}

}  // namespace explab
