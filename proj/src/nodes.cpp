#include "explab/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "explab/errors.hpp"

namespace explab {

namespace {

// Legendre polynomial P_n on [-1,1] by the three-term recurrence.
long double legendre(int n, long double x) {
    if (n == 0) return 1.0L;
    long double p0 = 1.0L, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

// Roots of f in the open interval (-1, 1) via sign-change scan plus bisection.
std::vector<long double> interior_roots(const std::function<long double(long double)>& f, std::size_t expected) {
    constexpr int kSamples = 8000;
    std::vector<long double> roots;
    long double a = -1.0L;
    long double fa = f(a + 1e-12L);
    for (int i = 1; i <= kSamples; ++i) {
        const long double b = -1.0L + 2.0L * i / kSamples - (i == kSamples ? 1e-12L : 0.0L);
        const long double fb = f(b);
        if ((fa < 0) != (fb < 0)) {
            long double lo = a, hi = b, flo = fa;
            for (int it = 0; it < 200 && hi - lo > 1e-19L; ++it) {
                const long double mid = 0.5L * (lo + hi);
                const long double fm = f(mid);
                if ((fm < 0) == (flo < 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5L * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    if (roots.size() != expected) throw Error("quadrature node search found the wrong number of roots");
    return roots;
}

NodeSet from_reference(std::vector<long double> xi, NodeFamily family) {
    std::sort(xi.begin(), xi.end());
    NodeSet set;
    set.family = family;
    for (long double x : xi) set.c.push_back(static_cast<double>(0.5L * (x + 1.0L)));
    return set;
}

void check_stages(int s, int min) {
    if (s < min || s > 8) throw InvalidArgument("node count out of supported range");
}

}  // namespace

std::string NodeSet::label() const {
    switch (family) {
        case NodeFamily::gauss: return "gauss";
        case NodeFamily::radau: return "radau";
        case NodeFamily::lobatto: return "lobatto";
        case NodeFamily::custom: return "custom";
    }
    return "custom";
}

NodeSet NodeSet::gauss(int s) {
    check_stages(s, 1);
    return from_reference(interior_roots([s](long double x) { return legendre(s, x); }, static_cast<std::size_t>(s)),
                          NodeFamily::gauss);
}

NodeSet NodeSet::radau(int s) {
    check_stages(s, 1);
    // Zeros of P_s - P_{s-1}; x = 1 is one of them.
    auto roots = s == 1 ? std::vector<long double>{}
                        : interior_roots([s](long double x) { return legendre(s, x) - legendre(s - 1, x); },
                                         static_cast<std::size_t>(s - 1));
    roots.push_back(1.0L);
    return from_reference(std::move(roots), NodeFamily::radau);
}

NodeSet NodeSet::lobatto(int s) {
    check_stages(s, 2);
    // Interior zeros of P'_{s-1} are those of P_{s-2} - x P_{s-1}.
    const int n = s - 1;
    auto roots = s == 2 ? std::vector<long double>{}
                        : interior_roots([n](long double x) { return legendre(n - 1, x) - x * legendre(n, x); },
                                         static_cast<std::size_t>(s - 2));
    roots.push_back(-1.0L);
    roots.push_back(1.0L);
    return from_reference(std::move(roots), NodeFamily::lobatto);
}

NodeSet NodeSet::custom(std::vector<double> nodes) {
    NodeSet set;
    set.c = std::move(nodes);
    set.family = NodeFamily::custom;
    return set;
}

}  // namespace explab
