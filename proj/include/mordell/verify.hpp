#pragma once

// Invariant suites behind `verify`. Each check records the measured value
// next to the limit it was held to.

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "mordell/arith.hpp"
#include "mordell/calibration.hpp"
#include "mordell/counts.hpp"
#include "mordell/dual.hpp"
#include "mordell/expsums.hpp"
#include "mordell/smooth.hpp"

namespace mordell {

struct CheckResult {
    std::string name;
    bool pass;
    double value;
    double limit;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    bool pass = true;
    double seconds = 0;
    std::vector<CheckResult> checks;

    void add(std::string name, double value, double limit, std::string detail = {}) {
        const bool ok = value <= limit;
        pass = pass && ok;
        checks.push_back({std::move(name), ok, value, limit, std::move(detail)});
    }
};

namespace detail {
template <typename F>
SuiteReport timed_suite(const std::string& name, F&& body) {
    SuiteReport r;
    r.suite = name;
    const auto t0 = std::chrono::steady_clock::now();
    body(r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}
} // namespace detail

/// Roots vs enumeration, phase well-definedness, sieve vs trial division,
/// inverses, S(D;3l) vs full enumeration.
inline SuiteReport verify_arith() {
    return detail::timed_suite("arith", [](SuiteReport& r) {
        const SpfTable t(100'000);

        i64 root_mismatch = 0;
        for (i64 q = 1; q <= 2000; ++q) {
            std::vector<std::vector<i64>> by_res(static_cast<std::size_t>(q));
            for (i64 x = 0; x < q; ++x) by_res[static_cast<std::size_t>(4 * x * x % q)].push_back(x);
            for (i64 D = -100; D <= 100; ++D)
                if (quad_roots(D, q, t).roots != by_res[static_cast<std::size_t>(mod_floor(D, q))]) ++root_mismatch;
        }
        r.add("quad_roots == enumeration (q <= 2000, |D| <= 100)", static_cast<double>(root_mismatch), 0);

        i64 shift_bad = 0;
        for (i64 l = 1; l <= 300; ++l)
            for (i64 D = -30; D <= 30; ++D)
                for (i64 x : quad_roots(D, 3 * l, t).roots) {
                    const i128 mod = static_cast<i128>(27) * l * l;
                    const i128 y = x + 3 * l;
                    const i128 lhs = (4 * y * y * y - 3 * static_cast<i128>(D) * y) % mod;
                    const i128 rhs = (4 * static_cast<i128>(x) * x * x - 3 * static_cast<i128>(D) * x) % mod;
                    if ((lhs - rhs) % mod != 0) ++shift_bad;
                }
        r.add("phase invariant under x -> x + 3l (l <= 300, |D| <= 30)", static_cast<double>(shift_bad), 0);

        i64 fact_bad = 0;
        for (i64 n = 1; n <= 100'000; ++n) {
            std::vector<PrimePower> trial;
            i64 m = n;
            for (i64 p = 2; p * p <= m; ++p)
                if (m % p == 0) {
                    int e = 0;
                    while (m % p == 0) {
                        m /= p;
                        ++e;
                    }
                    trial.push_back({p, e});
                }
            if (m > 1) trial.push_back({m, 1});
            const auto f = factorize(n, t);
            bool same = f.factors.size() == trial.size();
            for (std::size_t i = 0; same && i < trial.size(); ++i)
                same = f.factors[i].prime == trial[i].prime && f.factors[i].exponent == trial[i].exponent;
            if (!same) ++fact_bad;
        }
        r.add("factorize == trial division (n <= 1e5)", static_cast<double>(fact_bad), 0);

        i64 inv_bad = 0;
        for (i64 m = 2; m <= 500; ++m)
            for (i64 a = 1; a < m; ++a)
                if (std::gcd(a, m) == 1 && mod_inverse(a, m) * a % m != 1) ++inv_bad;
        r.add("a * mod_inverse(a, m) = 1 (m <= 500)", static_cast<double>(inv_bad), 0);

        double worst = 0;
        for (i64 l = 1; l <= 500; ++l)
            for (i64 D = -50; D <= 50; ++D) worst = std::max(worst, std::abs(s_sum(D, l, t) - s_sum_bruteforce(D, l)));
        r.add("|s_sum - s_sum_bruteforce| (l <= 500, |D| <= 50)", worst, 1e-9);
    });
}

inline SuiteReport verify_salie(i64 q_max = 99) {
    return detail::timed_suite("salie", [q_max](SuiteReport& r) {
        double worst = 0;
        i64 worst_q = 0;
        for (i64 q = 3; q <= q_max; q += 2) {
            const double v = completed_salie_max(q);
            if (v > worst) {
                worst = v;
                worst_q = q;
            }
        }
        r.add("max |completed sum| over odd 3 <= q <= " + std::to_string(q_max) + ", all beta", worst, 1e-8,
              "worst q = " + std::to_string(worst_q));
    });
}

inline SuiteReport verify_gidentity(i64 d_max = 10, i64 Y = 2000) {
    return detail::timed_suite("gidentity", [=](SuiteReport& r) {
        const SpfTable t(std::max<i64>(Y, 2));
        double worst = 0;
        for (i64 d = 1; d <= d_max; ++d)
            worst = std::max(worst, std::abs(g_sum(d, Y, t) - g_sum_factored(d, Y, t, false)));
        r.add("|g_sum - g_sum_factored| (d <= " + std::to_string(d_max) + ", Y = " + std::to_string(Y) + ")", worst,
              1e-9);
    });
}

struct DualWindowReport {
    double direct = 0, poisson = 0, poisson_rel = 0, volume = 0;
    DualSumResult kl, k0r, D;
    double reconstructed = 0, residual = 0, residual_limit = 0;
};

/// Poisson checkpoint, three-form agreement and reconstruction at one window.
inline DualWindowReport dual_window_report(const Window& win, double tol = 1e-12, unsigned threads = 1) {
    const auto w1 = default_w1(), w2 = default_w2();
    DualWindowReport d;
    d.direct = smoothed_count_direct(win, w1, w2);
    const auto pn = poisson_in_n(win, w1, w2, tol);
    d.poisson = pn.value;
    d.poisson_rel = std::abs(pn.value - d.direct) / std::abs(d.direct);
    d.kl = dual_sum(win, w1, w2, DualForm::kl, tol, threads);
    d.k0r = dual_sum(win, w1, w2, DualForm::k0r, tol, threads);
    d.D = dual_sum(win, w1, w2, DualForm::D, tol, threads);
    d.volume = volume_term(win, w1, w2);
    d.reconstructed = d.volume + 2 * lemma1_c * (eighth_root_conj() * d.kl.value).real();
    d.residual = std::abs(d.reconstructed - d.direct);
    const double X = static_cast<double>(win.X()), N = static_cast<double>(win.N());
    d.residual_limit = std::max(1.0, 5 * std::sqrt(X) / N) + 2 * lemma1_c * d.kl.truncation.tail_bound;
    return d;
}

inline void add_dual_checks(SuiteReport& r, const Window& win, const DualWindowReport& d) {
    const std::string at = " at (N=" + std::to_string(win.N()) + ", X=" + std::to_string(win.X()) + ")";
    r.add("Poisson-in-n vs direct, relative" + at, d.poisson_rel, 1e-6);
    const double mag = std::abs(d.kl.value);
    r.add("|kl - k0r|" + at, std::abs(d.kl.value - d.k0r.value),
          1e-6 * mag + d.kl.truncation.tail_bound + d.k0r.truncation.tail_bound);
    r.add("|kl - D|" + at, std::abs(d.kl.value - d.D.value),
          1e-6 * mag + d.kl.truncation.tail_bound + d.D.truncation.tail_bound);
    r.add("|k0r - D| (re-indexing)" + at, std::abs(d.k0r.value - d.D.value), 1e-9 * std::max(1.0, mag));
    r.add("reconstruction residual" + at, d.residual, d.residual_limit);
    const double M = win.M(), Z = win.Z();
    r.add("|T_S''| / (M^{3/4} Z^{1/2})" + at, mag / (std::pow(M, 0.75) * std::sqrt(Z)),
          calibration::dual_trivial_constant);
}

inline SuiteReport verify_dual(const Window& win, unsigned threads = 1) {
    return detail::timed_suite("dual", [&](SuiteReport& r) { add_dual_checks(r, win, dual_window_report(win, 1e-12, threads)); });
}

/// Grid of X values in [N^{2/3}, N^{1.2}], geometric, 13 points.
inline std::vector<i64> theorem2_grid(i64 N) {
    const double lo = std::pow(static_cast<double>(N), 2.0 / 3), hi = std::pow(static_cast<double>(N), 1.2);
    std::vector<i64> xs;
    for (int j = 0; j <= 12; ++j) xs.push_back(std::llround(lo * std::pow(hi / lo, j / 12.0)));
    return xs;
}

inline SuiteReport verify_theorem2() {
    return detail::timed_suite("theorem2", [](SuiteReport& r) {
        const auto w1 = default_w1(), w2 = default_w2();
        for (i64 N : {10'000, 100'000, 1'000'000}) {
            double worst = 0;
            double last_ratio = 0;
            for (i64 X : theorem2_grid(N)) {
                const Window win(N, X);
                const double ts = smoothed_count_direct(win, w1, w2), vol = volume_term(win, w1, w2);
                const double nd = static_cast<double>(N);
                const double scale = std::pow(nd, 1.0 / 3 + 0.05) + std::sqrt(static_cast<double>(X)) * std::pow(nd, 0.05);
                worst = std::max(worst, std::abs(ts - vol) / scale);
                last_ratio = ts / vol;
            }
            r.add("max |T_S - volume| / (N^{1/3+0.05} + X^{1/2} N^{0.05}), N=" + std::to_string(N), worst,
                  calibration::theorem2_constant);
            r.add("|T_S / volume - 1| at X = N^{1.2}, N=" + std::to_string(N), std::abs(last_ratio - 1), 0.05);
        }
    });
}

} // namespace mordell
