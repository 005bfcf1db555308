#pragma once

// Composite Gauss-Legendre quadrature with a panel-doubling self-check.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "mordell/error.hpp"
#include "mordell/summation.hpp"

namespace mordell {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
inline GaussRule gauss_legendre(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
        long double dp = 0;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        // recompute derivative at the converged root
        long double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const long double w = 2 / ((1 - x * x) * dp * dp);
        r.nodes[i] = static_cast<double>(-x);
        r.nodes[n - 1 - i] = static_cast<double>(x);
        r.weights[i] = r.weights[n - 1 - i] = static_cast<double>(w);
    }
    return r;
}

inline const GaussRule& gauss32() {
    static const GaussRule rule = gauss_legendre(32);
    return rule;
}

struct QuadratureSpec {
    int panels = 4;
    double target_abs_tol = 1e-12;
    int max_panels = 1 << 16;
};

/// Composite rule with a fixed panel count on each piece [b_i, b_{i+1}].
template <typename T, typename F>
T composite_gauss(F&& f, std::span<const double> breaks, int panels) {
    const GaussRule& g = gauss32();
    T total{};
    CompensatedSum re, im;
    for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
        const double a = breaks[s], b = breaks[s + 1];
        const double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            const double mid = a + (p + 0.5) * h;
            const double half = 0.5 * h;
            T acc{};
            for (std::size_t j = 0; j < g.nodes.size(); ++j)
                acc += g.weights[j] * f(mid + half * g.nodes[j]);
            acc *= half;
            if constexpr (std::is_same_v<T, cplx>) {
                re.add(acc.real());
                im.add(acc.imag());
            } else {
                re.add(acc);
            }
        }
    }
    if constexpr (std::is_same_v<T, cplx>)
        total = cplx(re.value(), im.value());
    else
        total = re.value();
    return total;
}

struct QuadratureResult {
    cplx value;
    double est_error;
    int panels;
};

/// Doubles the per-piece panel count until two successive estimates agree
/// within spec.target_abs_tol.
template <typename F>
QuadratureResult integrate(F&& f, std::span<const double> breaks, const QuadratureSpec& spec,
                           int min_panels = 1) {
    int panels = std::max(spec.panels, min_panels);
    cplx prev = composite_gauss<cplx>(f, breaks, panels);
    while (panels <= spec.max_panels) {
        panels *= 2;
        const cplx next = composite_gauss<cplx>(f, breaks, panels);
        const double diff = std::abs(next - prev);
        if (diff < spec.target_abs_tol) return {next, diff, panels};
        prev = next;
    }
    fail(ErrorKind::accuracy, "quadrature did not reach tolerance " +
                                  std::to_string(spec.target_abs_tol) + " within " +
                                  std::to_string(spec.max_panels) + " panels");
}

} // namespace mordell
