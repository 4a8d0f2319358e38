#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace explab {

enum class NodeFamily { gauss, radau, lobatto, custom };

/// Quadrature nodes c_1 < ... < c_s in [0,1].
struct NodeSet {
    std::vector<double> c;
    NodeFamily family = NodeFamily::custom;

    std::size_t size() const { return c.size(); }
    std::string label() const;

    /// Gauss-Legendre nodes shifted to [0,1].
    static NodeSet gauss(int s);
    /// Right Radau nodes (c_s = 1), as in Radau IIA.
    static NodeSet radau(int s);
    /// Gauss-Lobatto nodes including both endpoints; s >= 2.
    static NodeSet lobatto(int s);
    static NodeSet custom(std::vector<double> nodes);
};

}  // namespace explab
