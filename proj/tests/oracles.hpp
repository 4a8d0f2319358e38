#pragma once

#include <cmath>
#include <functional>

namespace oracle {

inline long double factorial(int n) { return n <= 1 ? 1.0L : n * factorial(n - 1); }

/// Composite 5-point Gauss-Legendre on [a, b], long double.
inline long double gauss5(const std::function<long double(long double)>& f, long double a, long double b, int panels) {
    static const long double x[] = {0.0L, -0.538469310105683091036314420700208805L, 0.538469310105683091036314420700208805L,
                                    -0.906179845938663992797626878299392965L, 0.906179845938663992797626878299392965L};
    static const long double w[] = {0.568888888888888888888888888888888889L, 0.478628670499366468041291514835638192L,
                                    0.478628670499366468041291514835638192L, 0.236926885056189087514264040719917363L,
                                    0.236926885056189087514264040719917363L};
    const long double h = (b - a) / panels;
    long double sum = 0.0L;
    for (int p = 0; p < panels; ++p) {
        const long double mid = a + h * (p + 0.5L);
        for (int k = 0; k < 5; ++k) sum += 0.5L * h * w[k] * f(mid + 0.5L * h * x[k]);
    }
    return sum;
}

/// phi_j(z) = int_0^1 exp((1-s) z) s^{j-1}/(j-1)! ds, j >= 1.
inline double phi_integral(int j, double z, int panels = 200) {
    if (j == 0) return std::exp(z);
    const long double zl = z;
    return static_cast<double>(gauss5(
        [&](long double s) { return std::exp((1.0L - s) * zl) * std::pow(s, j - 1) / factorial(j - 1); }, 0.0L, 1.0L,
        panels));
}

}  // namespace oracle
