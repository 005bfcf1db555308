#pragma once

// Exact lattice-point counts near y^2 = x^3: T(N, X), its primitive
// variant, the quadric counter U(A, B, C, D) and the first Davenport family.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mordell/arith.hpp"
#include "mordell/error.hpp"

namespace mordell {

/// Counting window N <= n <= 2N, |n^2 - m^3| <= X, with M = N^{2/3} and Z = N/X.
class Window {
public:
    Window(i64 N, i64 X) : N_(N), X_(X) {
        require(N >= 1, ErrorKind::invalid_argument, "window: N must be positive");
        require(X >= 0, ErrorKind::invalid_argument, "window: X must be nonnegative");
        require(static_cast<i128>(N) * N >= static_cast<i128>(4) * X, ErrorKind::invalid_argument,
                "window: N < 2*sqrt(X) (N=" + std::to_string(N) + ", X=" + std::to_string(X) + ")");
    }

    i64 N() const noexcept { return N_; }
    i64 X() const noexcept { return X_; }
    double M() const { return static_cast<double>(std::cbrt(static_cast<long double>(N_) * N_)); }
    /// +infinity when X == 0.
    double Z() const {
        return X_ == 0 ? std::numeric_limits<double>::infinity()
                       : static_cast<double>(N_) / static_cast<double>(X_);
    }

private:
    i64 N_;
    i64 X_;
};

struct LatticePoint {
    i64 m;
    i64 n;
    i64 b;  // n^2 - m^3
    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

struct CountResult {
    i64 count = 0;
    std::optional<std::vector<LatticePoint>> points;
};

namespace detail {

/// #{(m, n) : n_lo <= n <= n_hi, |n^2 - m^3| <= X}, all decisions in exact
/// integer arithmetic. n_lo >= 1 is assumed.
inline CountResult count_range(i64 n_lo, i64 n_hi, i64 X, bool collect) {
    CountResult res;
    if (collect) res.points.emplace();
    if (n_lo > n_hi) return res;
    const u128 lo3 = static_cast<i128>(n_lo) * n_lo > X ? static_cast<u128>(static_cast<i128>(n_lo) * n_lo - X) : 0;
    const u128 hi3 = static_cast<u128>(static_cast<i128>(n_hi) * n_hi + X);
    // m^3 in [lo3, hi3]
    auto icbrt = [](u128 v) {
        u128 r = static_cast<u128>(std::cbrt(static_cast<long double>(v)));
        while (r * r * r > v) --r;
        while ((r + 1) * (r + 1) * (r + 1) <= v) ++r;
        return r;
    };
    u128 m_lo = icbrt(lo3);
    if (m_lo * m_lo * m_lo < lo3) ++m_lo;
    if (m_lo == 0) m_lo = 1;
    const u128 m_hi = icbrt(hi3);
    for (u128 m = m_lo; m <= m_hi; ++m) {
        const u128 m3 = m * m * m;
        const u128 sq_lo = m3 > static_cast<u128>(X) ? m3 - X : 0;
        i64 a = static_cast<i64>(ceil_sqrt(sq_lo));
        i64 b = static_cast<i64>(isqrt(m3 + static_cast<u128>(X)));
        a = std::max(a, n_lo);
        b = std::min(b, n_hi);
        if (a > b) continue;
        res.count += b - a + 1;
        if (collect)
            for (i64 n = a; n <= b; ++n)
                res.points->push_back({static_cast<i64>(m), n,
                                       static_cast<i64>(static_cast<i128>(n) * n - static_cast<i128>(m3))});
    }
    return res;
}

} // namespace detail

/// T(N, X) with optional point collection in ascending (m, n) order.
inline CountResult count_exact(const Window& w, bool collect = false) {
    return detail::count_range(w.N(), 2 * w.N(), w.X(), collect);
}

/// Points (m, n) of T(N, X) admitting no d > 1 with d^2 | m and d^3 | n,
/// by Moebius inversion over d with exact integer windows.
inline i64 count_primitive(const Window& w, const SpfTable& table) {
    const i64 N = w.N(), X = w.X();
    i64 total = 0;
    for (i64 d = 1; d * d * d <= 2 * N; ++d) {
        require(d <= table.limit() || d == 1, ErrorKind::out_of_range,
                "count_primitive: sieve too small for d = " + std::to_string(d));
        const int mu = d == 1 ? 1 : factorize(d, table).mobius;
        if (mu == 0) continue;
        const i64 d3 = d * d * d;
        const i128 d6 = static_cast<i128>(d3) * d3;
        const i64 n_lo = ceil_div(N, d3);
        const i64 n_hi = floor_div(2 * N, d3);
        const i64 x_red = static_cast<i64>(X / d6);
        total += mu * detail::count_range(n_lo, n_hi, x_red, false).count;
    }
    return total;
}

/// U(A, B, C, D) = #{1 <= |a| <= A, |b| <= B, |c| <= C : |b^2 - ac| <= D}.
inline i64 count_quadric(i64 A, i64 B, i64 C, double D) {
    require(A >= 1 && B >= 1 && C >= 1, ErrorKind::invalid_argument,
            "count_quadric requires positive A, B, C");
    if (D < 0) return 0;
    // b^2 and ac are integers, so only floor(D) matters.
    const i64 Dint = static_cast<i64>(std::floor(std::min(D, 4e18)));
    i64 total = 0;
    for (i64 a = 1; a <= A; ++a) {
        for (i64 b = 0; b <= B; ++b) {
            const i64 mult_b = b == 0 ? 1 : 2;
            const i128 b2 = static_cast<i128>(b) * b;
            // a > 0: c in [ceil((b^2 - D)/a), floor((b^2 + D)/a)]; a < 0 mirrors c -> -c.
            const i128 lo_num = b2 - Dint, hi_num = b2 + Dint;
            i128 c_lo = lo_num >= 0 ? (lo_num + a - 1) / a : -((-lo_num) / a);
            i128 c_hi = hi_num >= 0 ? hi_num / a : -((-hi_num + a - 1) / a);
            if (c_lo < -C) c_lo = -C;
            if (c_hi > C) c_hi = C;
            if (c_lo <= c_hi) total += 2 * mult_b * static_cast<i64>(c_hi - c_lo + 1);
        }
    }
    return total;
}

struct Lemma2Bound {
    double value;
    bool hypothesis_ok;  // D <= min(B^2, AC)
};

/// constant * (A (1 + sqrt D) + B (1 + D) (AC)^eps).
inline Lemma2Bound lemma2_bound(double A, double B, double C, double D, double eps, double constant) {
    const bool ok = D <= std::min(B * B, A * C);
    return {constant * (A * (1 + std::sqrt(D)) + B * (1 + D) * std::pow(A * C, eps)), ok};
}

struct QuadricSweepWorst {
    double ratio = 0;  // U / (A(1 + sqrt D) + B(1 + D)(AC)^eps)
    i64 A = 0, B = 0, C = 0, D = 0, U = 0;
};

/// Largest U / (A(1 + sqrt D) + B(1 + D)(AC)^eps) over 1 <= A, B, C <= side and
/// integer 0 <= D <= min(B^2, AC). For fixed (A, B) a histogram of |b^2 - ac|
/// is grown one c-layer at a time, so every U(A, B, C, D) is a prefix sum.
inline QuadricSweepWorst quadric_sweep(i64 side, double eps) {
    require(side >= 1 && side <= 256, ErrorKind::invalid_argument, "quadric_sweep: side outside [1, 256]");
    QuadricSweepWorst worst;
    const i64 vmax = side * side;  // D never exceeds B^2 <= side^2
    std::vector<i64> hist(static_cast<std::size_t>(vmax) + 1);
    for (i64 A = 1; A <= side; ++A) {
        for (i64 B = 1; B <= side; ++B) {
            std::fill(hist.begin(), hist.end(), 0);
            auto add_layer = [&](i64 c, i64 mult_c) {
                for (i64 a = 1; a <= A; ++a)
                    for (i64 b = 0; b <= B; ++b) {
                        const i64 v = std::abs(b * b - a * c);
                        if (v <= vmax) hist[v] += 2 * (b == 0 ? 1 : 2) * mult_c;  // a -> -a, b -> -b
                    }
            };
            add_layer(0, 1);
            for (i64 C = 1; C <= side; ++C) {
                add_layer(C, 1);
                add_layer(-C, 1);
                const i64 Dmax = std::min(B * B, A * C);
                const double pw = std::pow(static_cast<double>(A * C), eps);
                i64 U = 0;
                for (i64 D = 0; D <= Dmax; ++D) {
                    U += hist[D];
                    const double bound = A * (1 + std::sqrt(static_cast<double>(D))) + B * (1.0 + D) * pw;
                    const double r = static_cast<double>(U) / bound;
                    if (r > worst.ratio) worst = {r, A, B, C, D, U};
                }
            }
        }
    }
    return worst;
}

/// Integral points of x = t^2 + 1, y = t^3 + 3t/2 for even t in [t_lo, t_hi].
inline std::vector<LatticePoint> davenport_points(i64 t_lo, i64 t_hi) {
    std::vector<LatticePoint> out;
    for (i64 t = t_lo; t <= t_hi; ++t) {
        if (t % 2 != 0) continue;
        const i64 u = t / 2;
        out.push_back({4 * u * u + 1, 8 * u * u * u + 3 * u, -(3 * u * u + 1)});
    }
    return out;
}

} // namespace mordell
