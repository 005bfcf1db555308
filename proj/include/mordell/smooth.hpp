#pragma once

// Smoothed counts T_S(N, X) and C_S(N, X) by direct summation, and the
// volume term (XM/N) w1^(0) w2^(0).

#include <cmath>
#include <string>
#include <vector>

#include "mordell/arith.hpp"
#include "mordell/bump.hpp"
#include "mordell/counts.hpp"
#include "mordell/summation.hpp"

namespace mordell {

/// m^{3/2} split as r + frac with r = isqrt(m^3) exact and
/// frac = (m^3 - r^2) / (r + sqrt(m^3)) in extended precision.
struct ThreeHalves {
    i64 r;
    long double frac;  // in [0, 1)
};

inline ThreeHalves three_halves(i64 m) {
    const u128 m3 = static_cast<u128>(m) * m * m;
    const u128 r = isqrt(m3);
    const long double f = static_cast<long double>(m3 - r * r);
    const long double root = std::sqrt(static_cast<long double>(m3));
    return {static_cast<i64>(r), f / (static_cast<long double>(r) + root)};
}

inline constexpr double max_direct_terms = 2e9;

namespace detail {

/// Sum over m, n of w1(m/M) w2(Z(n - m^{3/2})) * keep(m, n) for real M, Z.
template <typename Keep>
double smoothed_sum(double M, double Z, const PlateauBump& w1, const PlateauBump& w2, Keep&& keep) {
    const i64 m_lo = std::max<i64>(1, static_cast<i64>(std::ceil(w1.support_lo() * M)));
    const i64 m_hi = static_cast<i64>(std::floor(w1.support_hi() * M));
    const double width = (w2.support_hi() - w2.support_lo()) / Z;
    if (static_cast<double>(m_hi - m_lo + 1) * (width + 1) > max_direct_terms)
        fail(ErrorKind::budget, "smoothed count: direct double sum exceeds the term budget");
    require(M < 1e12, ErrorKind::accuracy, "smoothed count: M too large for exact m^3");
    CompensatedSum total;
    const double lo = w2.support_lo() / Z, hi = w2.support_hi() / Z;
    for (i64 m = m_lo; m <= m_hi; ++m) {
        const double a = w1(static_cast<double>(m) / M);
        if (a == 0) continue;
        const ThreeHalves th = three_halves(m);
        // n - r ranges over integers j with lo < j - frac < hi
        const i64 j_lo = static_cast<i64>(std::ceil(static_cast<long double>(lo) + th.frac));
        const i64 j_hi = static_cast<i64>(std::floor(static_cast<long double>(hi) + th.frac));
        double inner = 0;
        for (i64 j = j_lo; j <= j_hi; ++j) {
            if (!keep(m, th.r + j)) continue;
            const double dist = static_cast<double>(static_cast<long double>(j) - th.frac);
            inner += w2(Z * dist);
        }
        if (inner != 0) total.add(a * inner);
    }
    return total.value();
}

} // namespace detail

/// T_S at real scale parameters (M, Z); the Moebius route evaluates it at
/// (M / d^2, Z d^3).
inline double smoothed_count_mz(double M, double Z, const PlateauBump& w1, const PlateauBump& w2) {
    return detail::smoothed_sum(M, Z, w1, w2, [](i64, i64) { return true; });
}

inline void require_smoothing_window(const Window& win, const PlateauBump&) {
    require(win.X() >= 1, ErrorKind::invalid_argument, "smoothed count requires X >= 1");
}

/// True when T(N, X) <= T_S(N, X) is guaranteed: w1 = 1 on
/// [eta, 1/eta] with eta < (2/9)^{1/3}, and w2 = 1 on [-1, 1].
inline bool is_majorant_pair(const PlateauBump& w1, const PlateauBump& w2) {
    const double eta = std::max(w1.plateau_lo(), 1.0 / w1.plateau_hi());
    return eta < std::cbrt(2.0 / 9.0) && w2.plateau_lo() <= -1.0 && w2.plateau_hi() >= 1.0;
}

/// T_S(N, X) = sum_{m,n} w1(m/M) w2(Z(n - m^{3/2})).
inline double smoothed_count_direct(const Window& win, const PlateauBump& w1, const PlateauBump& w2) {
    require_smoothing_window(win, w1);
    return smoothed_count_mz(win.M(), win.Z(), w1, w2);
}

/// (XM/N) w1^(0) w2^(0).
inline double volume_term(const Window& win, const PlateauBump& w1, const PlateauBump& w2,
                          const QuadratureSpec& q = default_quadrature()) {
    const double xm_over_n = static_cast<double>(win.X()) * win.M() / static_cast<double>(win.N());
    return xm_over_n * bump_fourier(w1, 0, q).real() * bump_fourier(w2, 0, q).real();
}

struct PrimitiveSmoothed {
    double divisor_route;  // direct sum restricted to primitive (m, n)
    double mobius_route;   // sum_d mu(d) T_S(N/d^3, X/d^6)
};

inline PrimitiveSmoothed smoothed_count_primitive_both(const Window& win, const PlateauBump& w1,
                                                      const PlateauBump& w2, const SpfTable& table) {
    require_smoothing_window(win, w1);
    const double M = win.M(), Z = win.Z();
    const i64 m_hi = static_cast<i64>(std::floor(w1.support_hi() * M));
    require(m_hi <= table.limit(), ErrorKind::out_of_range,
            "smoothed_count_primitive: sieve limit below " + std::to_string(m_hi));

    // Primes p with p^2 | m, cached for the current m.
    i64 cached_m = -1;
    std::vector<i64> square_primes;
    auto primitive = [&](i64 m, i64 n) {
        if (m != cached_m) {
            cached_m = m;
            square_primes.clear();
            if (m > 1)
                for (const auto& [p, e] : factorize(m, table).factors)
                    if (e >= 2) square_primes.push_back(p);
        }
        for (i64 p : square_primes)
            if (n % (p * p * p) == 0) return false;
        return true;
    };
    PrimitiveSmoothed out{};
    out.divisor_route = detail::smoothed_sum(M, Z, w1, w2, primitive);

    CompensatedSum mob;
    for (i64 d = 1; static_cast<double>(d * d) <= w1.support_hi() * M; ++d) {
        const int mu = d == 1 ? 1 : factorize(d, table).mobius;
        if (mu == 0) continue;
        const double dd = static_cast<double>(d);
        mob.add(mu * smoothed_count_mz(M / (dd * dd), Z * dd * dd * dd, w1, w2));
    }
    out.mobius_route = mob.value();
    return out;
}

/// C_S(N, X) by the divisor-condition sum, cross-checked against the
/// Moebius identity to 1e-6 relative.
inline double smoothed_count_primitive(const Window& win, const PlateauBump& w1, const PlateauBump& w2,
                                       const SpfTable& table) {
    const auto both = smoothed_count_primitive_both(win, w1, w2, table);
    const double scale = std::max(1.0, std::abs(both.divisor_route));
    if (std::abs(both.divisor_route - both.mobius_route) > 1e-6 * scale)
        fail(ErrorKind::internal_consistency,
             "C_S divisor route " + std::to_string(both.divisor_route) + " != Moebius route " +
                 std::to_string(both.mobius_route));
    return both.divisor_route;
}

} // namespace mordell
