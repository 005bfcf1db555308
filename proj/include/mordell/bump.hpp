#pragma once

#include <array>
#include <cmath>
#include <string>

#include "mordell/error.hpp"
#include "mordell/quadrature.hpp"
#include "mordell/summation.hpp"

namespace mordell {

/// C-infinity weight: 0 outside (s0, s1), 1 on [p0, p1], glued with the
/// exp(-1/x) smooth step on both transitions.
class PlateauBump {
public:
    PlateauBump(double s0, double p0, double p1, double s1)
        : s0_(s0), p0_(p0), p1_(p1), s1_(s1) {
        require(s0 < p0 && p0 < p1 && p1 < s1, ErrorKind::invalid_argument,
                "PlateauBump requires s0 < p0 < p1 < s1");
    }

    /// Smooth step: 0 for u <= 0, 1 for u >= 1.
    static double step(double u) {
        if (u <= 0) return 0;
        if (u >= 1) return 1;
        const double a = std::exp(-1.0 / u);
        const double b = std::exp(-1.0 / (1.0 - u));
        return a / (a + b);
    }

    double operator()(double t) const {
        if (t <= s0_ || t >= s1_) return 0;
        if (t < p0_) return step((t - s0_) / (p0_ - s0_));
        if (t > p1_) return step((s1_ - t) / (s1_ - p1_));
        return 1;
    }

    double support_lo() const { return s0_; }
    double plateau_lo() const { return p0_; }
    double plateau_hi() const { return p1_; }
    double support_hi() const { return s1_; }

    /// Breakpoints where the closed form changes: s0, p0, p1, s1.
    std::array<double, 4> breaks() const { return {s0_, p0_, p1_, s1_}; }

private:
    double s0_, p0_, p1_, s1_;
};

/// Frozen weights. w1 localises m ~ M, w2 the distance n - m^{3/2}.
inline PlateauBump default_w1() { return {0.35, 0.5, 2.0, 2.8}; }
inline PlateauBump default_w2() { return {-2.0, -1.0, 1.0, 2.0}; }

/// Minorant pair: every (m, n) they weight positively is counted by T(N, X)
/// when 4X <= N^2, and both weights are <= 1.
inline PlateauBump minorant_w1() { return {1.05, 1.1, 1.45, 1.5}; }
inline PlateauBump minorant_w2() { return {-0.2, -0.1, 0.1, 0.2}; }

inline QuadratureSpec default_quadrature() { return {4, 1e-12, 1 << 16}; }

/// w-hat(xi) = int w(t) e(-xi t) dt.
inline QuadratureResult bump_fourier_result(const PlateauBump& w, double xi,
                                            const QuadratureSpec& q = default_quadrature()) {
    const auto br = w.breaks();
    // about two panels per oscillation on the widest piece
    const int min_panels = static_cast<int>(std::ceil(std::abs(xi) * (w.support_hi() - w.support_lo()))) + 1;
    return integrate([&](double t) { return w(t) * e(-xi * t); }, br, q, min_panels);
}

inline cplx bump_fourier(const PlateauBump& w, double xi,
                         const QuadratureSpec& q = default_quadrature()) {
    return bump_fourier_result(w, xi, q).value;
}

/// int w(t) dt, by quadrature of the real weight alone.
inline double bump_mass(const PlateauBump& w, const QuadratureSpec& q = default_quadrature()) {
    const auto br = w.breaks();
    return integrate([&](double t) { return cplx(w(t), 0.0); }, br, q).value.real();
}

} // namespace mordell
