#pragma once

// Dual forms of the smoothed count. With c = 2 sqrt(2)/3,
//   T_S = volume + 2c Re(e^{-pi i/4} T_S'') + (negligible),
// where T_S'' is evaluated as
//   kl:  Z^{-1} sum_{l,k > 0} sqrt(k)/l e(4k^3/27l^2) w1(4k^2/9l^2M) w2^(l/Z)
//   k0r: P sum_l w2^(l/Z)/sqrt(l) sum_{k0 mod 3l} sum_r e(-8k0^3/27l^2 + r k0/3l) W1(sqrt(M)(3lr - 4k0^2)/6l)
//   D:   P sum_l w2^(l/Z)/sqrt(l) sum_D S(D;3l) W1(-D sqrt(M)/6l)
// with P = sqrt(3) M^{3/4} / (2^{3/2} Z).

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "mordell/arith.hpp"
#include "mordell/bump.hpp"
#include "mordell/calibration.hpp"
#include "mordell/counts.hpp"
#include "mordell/error.hpp"
#include "mordell/expsums.hpp"
#include "mordell/oscillatory.hpp"
#include "mordell/parallel.hpp"
#include "mordell/smooth.hpp"
#include "mordell/summation.hpp"

namespace mordell {

enum class DualForm { kl, k0r, D };

inline const char* to_string(DualForm f) {
    switch (f) {
    case DualForm::kl: return "kl";
    case DualForm::k0r: return "k0r";
    case DualForm::D: return "D";
    }
    return "?";
}

struct DualTruncation {
    i64 l_max = 0;
    double y_max = 0;       // |argument of W1| kept (k0r and D forms)
    double tail_bound = 0;  // bound on everything discarded
};

struct DualSumResult {
    cplx value;
    DualTruncation truncation;
    DualForm form;
};

inline constexpr double max_dual_terms = 2e10;

namespace detail {

inline bool same_bump(const PlateauBump& a, const PlateauBump& b) { return a.breaks() == b.breaks(); }

/// |f(x)| < tol * ref for every sampled x beyond the returned point, scanning
/// a non-integer grid (w-hat vanishes at nonzero integers) up to x_stop.
template <typename F>
double scan_cutoff(F&& f, double ref, double tol, double x_stop) {
    double last = 0;
    for (double x = 0.137; x <= x_stop; x += 0.25)
        if (std::abs(f(x)) >= tol * ref) last = x;
    require(last + 1 < x_stop, ErrorKind::accuracy, "decay scan did not reach tolerance");
    return last + 1;
}

/// Truncation points for w2-hat (in xi) and W1 (in y) at relative tolerance tol.
struct Cutoffs {
    double xi;
    double y;
};

inline Cutoffs dual_cutoffs(const PlateauBump& w1, const PlateauBump& w2, double tol) {
    Cutoffs c{};
    if (same_bump(w2, default_w2())) {
        c.xi = calibration::w2_hat_envelope.cutoff(tol);
    } else {
        const auto tr = bump_transform(w2);
        c.xi = scan_cutoff(tr, std::abs(tr(0)), tol, 2000);
    }
    if (same_bump(w1, default_w1())) {
        c.y = calibration::w1_transform_envelope.cutoff(tol);
    } else {
        const TrapezoidTransform tr([&](double t) { return std::sqrt(t) * w1(t * t); }, std::sqrt(w1.support_lo()),
                                    std::sqrt(w1.support_hi()), 8192);
        c.y = scan_cutoff(tr, std::abs(tr(0)), tol, 4000);
    }
    return c;
}

/// Relative envelope used for tail bounds; for non-default weights a flat
/// tol beyond the scanned cutoff.
inline double w2_env(const PlateauBump& w2, double xi, double cut, double tol) {
    if (same_bump(w2, default_w2())) return calibration::w2_hat_envelope(xi);
    return std::abs(xi) >= cut ? tol : 1.0;
}
inline double w1_env(const PlateauBump& w1, double y, double cut, double tol) {
    if (same_bump(w1, default_w1())) return calibration::w1_transform_envelope(y);
    return std::abs(y) >= cut ? tol : 1.0;
}

/// sum_{k in K_l} sqrt(k) / l for the k-range cut out by w1, bounded above.
inline double kl_row_bound(double l, double sqrtM, const PlateauBump& w1) {
    const double lo = 1.5 * l * sqrtM * std::sqrt(w1.support_lo());
    const double hi = 1.5 * l * sqrtM * std::sqrt(w1.support_hi());
    return (hi - lo + 1) * std::sqrt(hi) / l;
}

/// kl-form row: sum_k sqrt(k) e(4k^3/27l^2) w1(4k^2/9l^2M). The cubic phase
/// runs on a third-order multiplicative recurrence reseeded every 64 steps.
inline cplx kl_row(i64 l, double M, const PlateauBump& w1) {
    const double sqrtM = std::sqrt(M);
    const i64 k_lo = std::max<i64>(1, static_cast<i64>(std::ceil(1.5 * l * sqrtM * std::sqrt(w1.support_lo()))));
    const i64 k_hi = static_cast<i64>(std::floor(1.5 * l * sqrtM * std::sqrt(w1.support_hi())));
    const i64 mod = 27 * l * l;
    const double tscale = 4.0 / (9.0 * static_cast<double>(l) * static_cast<double>(l) * M);
    const cplx c3 = e_frac(24 % mod, mod);
    CompensatedComplexSum acc;
    for (i64 k = k_lo; k <= k_hi;) {
        const i128 kk = k;
        cplx z = e_frac(mod_floor(4 * kk * kk * kk, mod), mod);
        cplx u = e_frac(mod_floor(4 * (3 * kk * kk + 3 * kk + 1), mod), mod);
        cplx v = e_frac(mod_floor(24 * (kk + 1), mod), mod);
        cplx block = 0;
        const i64 stop = std::min(k_hi, k + 63);
        for (; k <= stop; ++k) {
            const double kd = static_cast<double>(k);
            block += std::sqrt(kd) * w1(kd * kd * tscale) * z;
            z *= u;
            u *= v;
            v *= c3;
        }
        acc += block;
    }
    return acc.value();
}

/// k0r-form row: sum_{k0 mod 3l} sum_r e(-8k0^3/27l^2 + r k0/3l) W1(y), |y| <= y_max.
inline cplx k0r_row(i64 l, double M, const W1Table& W1, double y_max) {
    const i64 q = 3 * l, mod = 27 * l * l;
    const double half = std::sqrt(M) / (6.0 * static_cast<double>(l));
    const double span = y_max / half;  // bound on |3lr - 4k0^2|
    CompensatedComplexSum acc;
    for (i64 k0 = 0; k0 < q; ++k0) {
        const i64 A = 4 * k0 * k0;
        const i64 r_lo = static_cast<i64>(std::ceil((static_cast<double>(A) - span) / static_cast<double>(q)));
        const i64 r_hi = static_cast<i64>(std::floor((static_cast<double>(A) + span) / static_cast<double>(q)));
        const i128 k03 = static_cast<i128>(k0) * k0 * k0;
        const cplx step = e_frac(mod_floor(static_cast<i128>(9) * l * k0, mod), mod);
        cplx block = 0, z;
        for (i64 r = r_lo; r <= r_hi; ++r) {
            if ((r - r_lo) % 64 == 0)
                z = e_frac(mod_floor(-8 * k03 + static_cast<i128>(9) * l * k0 * r, mod), mod);
            const double y = half * static_cast<double>(q * r - A);
            if (std::abs(y) <= y_max) block += z * W1(y);
            z *= step;
        }
        acc += block;
    }
    return acc.value();
}

/// D-form row: sum_{|D| <= D_max} S(D;3l) W1(-D sqrt(M)/6l).
inline cplx d_row(i64 l, double M, const W1Table& W1, double y_max) {
    const double half = std::sqrt(M) / (6.0 * static_cast<double>(l));
    const i64 D_max = static_cast<i64>(std::floor(y_max / half));
    const auto S = s_sum_range(l, -D_max, D_max);
    CompensatedComplexSum acc;
    cplx block = 0;
    for (i64 D = -D_max; D <= D_max; ++D) {
        const cplx s = S[static_cast<std::size_t>(D + D_max)];
        if (s == cplx(0, 0)) continue;
        block += s * W1(-half * static_cast<double>(D));
        if ((D & 63) == 0) {
            acc += block;
            block = 0;
        }
    }
    acc += block;
    return acc.value();
}

} // namespace detail

/// T_S'' in the requested form, truncated where w2-hat and W1 fall below
/// tol relative to their values at 0.
inline DualSumResult dual_sum(const Window& win, const PlateauBump& w1, const PlateauBump& w2, DualForm form,
                              double tol = 1e-12, unsigned threads = 1) {
    require(win.X() >= 1, ErrorKind::invalid_argument, "dual_sum requires X >= 1");
    require(win.X() <= win.N(), ErrorKind::invalid_argument, "dual_sum requires Z >= 1 (X <= N)");
    require(tol > 0 && tol < 1, ErrorKind::invalid_argument, "dual_sum: tol must lie in (0, 1)");
    require(w1.support_lo() > 0, ErrorKind::invalid_argument, "dual_sum: w1 support must lie in (0, inf)");
    const double M = win.M(), Z = win.Z(), sqrtM = std::sqrt(M);
    const auto cut = detail::dual_cutoffs(w1, w2, tol);
    const i64 l_max = std::max<i64>(1, static_cast<i64>(std::floor(cut.xi * Z)));
    const double y_max = cut.y;

    // work estimate, terms summed over l <= l_max
    const double ld = static_cast<double>(l_max);
    const double kl_terms = 1.5 * (std::sqrt(w1.support_hi()) - std::sqrt(w1.support_lo())) * sqrtM * ld * ld / 2;
    const double y_terms = 2 * y_max * 6.0 / sqrtM * ld * ld / 2 + 3 * ld * ld / 2;
    const double terms = form == DualForm::kl ? kl_terms : y_terms;
    if (terms > max_dual_terms)
        fail(ErrorKind::budget, std::string("dual_sum: ") + to_string(form) + " form needs ~" +
                                    std::to_string(terms) + " terms for l <= " + std::to_string(l_max));

    const auto w2hat = bump_transform(w2);
    const double w2_0 = std::abs(w2hat(0));
    std::vector<double> hat(static_cast<std::size_t>(l_max) + 1);
    for (i64 l = 1; l <= l_max; ++l) hat[l] = w2hat(static_cast<double>(l) / Z).real();

    std::unique_ptr<W1Table> table;
    if (form != DualForm::kl) table = std::make_unique<W1Table>(w1, y_max + 1);

    std::vector<cplx> rows(static_cast<std::size_t>(l_max) + 1);
    parallel_for_dynamic(static_cast<std::size_t>(l_max), threads, [&](std::size_t i) {
        const i64 l = static_cast<i64>(i) + 1;
        switch (form) {
        case DualForm::kl: rows[l] = detail::kl_row(l, M, w1); break;
        case DualForm::k0r: rows[l] = detail::k0r_row(l, M, *table, y_max); break;
        case DualForm::D: rows[l] = detail::d_row(l, M, *table, y_max); break;
        }
    });

    const double pref = std::sqrt(3.0) * std::pow(M, 0.75) / (2.0 * std::numbers::sqrt2 * Z);
    CompensatedComplexSum total;
    for (i64 l = 1; l <= l_max; ++l) {
        const double lw = static_cast<double>(l);
        const double f = form == DualForm::kl ? hat[l] / (Z * lw) : pref * hat[l] / std::sqrt(lw);
        total += f * rows[l];
    }

    // l-tail, with the kl row bound standing in for every form
    double tail = 0;
    for (i64 l = l_max + 1; l <= 100 * l_max + 100; ++l) {
        const double lw = static_cast<double>(l);
        const double t = w2_0 * detail::w2_env(w2, lw / Z, cut.xi, tol) / Z * detail::kl_row_bound(lw, sqrtM, w1);
        tail += t;
        if (t < 1e-30) break;
    }
    // y-tail: about 6l/sqrt(M) values of D per unit y, mean |S(D;3l)| <= 1
    if (form != DualForm::kl) {
        const double W1_0 = std::abs((*table)(0));
        double env_tail = 0;
        for (double y = y_max; y < 100 * y_max; y += 1) {
            const double v = detail::w1_env(w1, y, y_max, tol);
            env_tail += v;
            if (v < 1e-30) break;
        }
        for (i64 l = 1; l <= l_max; ++l) {
            const double lw = static_cast<double>(l);
            tail += pref * std::abs(hat[l]) / std::sqrt(lw) * W1_0 * 2 * (6 * lw / sqrtM + 1) * env_tail;
        }
    }
    return {total.value(), {l_max, form == DualForm::kl ? 0.0 : y_max, tail}, form};
}

struct PoissonCheckpoint {
    double value;
    i64 l_max;
    double tail_bound;
};

/// Poisson summation in n:
///   T_S = Z^{-1} sum_m w1(m/M) [w2^(0) + 2 Re sum_{l >= 1} e(-l m^{3/2}) w2^(l/Z)],
/// truncated at the w2-hat cutoff.
inline PoissonCheckpoint poisson_in_n(const Window& win, const PlateauBump& w1, const PlateauBump& w2,
                                      double tol = 1e-12) {
    require(win.X() >= 1, ErrorKind::invalid_argument, "poisson_in_n requires X >= 1");
    const double M = win.M(), Z = win.Z();
    const auto cut = detail::dual_cutoffs(w1, w2, tol);
    const i64 l_max = std::max<i64>(1, static_cast<i64>(std::floor(cut.xi * Z)));
    const i64 m_lo = std::max<i64>(1, static_cast<i64>(std::ceil(w1.support_lo() * M)));
    const i64 m_hi = static_cast<i64>(std::floor(w1.support_hi() * M));
    if (static_cast<double>(m_hi - m_lo + 1) * static_cast<double>(l_max) > max_dual_terms)
        fail(ErrorKind::budget, "poisson_in_n: term budget exceeded");
    const auto w2hat = bump_transform(w2);
    std::vector<double> hat(static_cast<std::size_t>(l_max) + 1);
    for (i64 l = 0; l <= l_max; ++l) hat[l] = w2hat(static_cast<double>(l) / Z).real();

    CompensatedSum total, mass;
    for (i64 m = m_lo; m <= m_hi; ++m) {
        const double a = w1(static_cast<double>(m) / M);
        if (a == 0) continue;
        mass.add(a);
        const long double frac = three_halves(m).frac;
        const cplx step = e(-static_cast<double>(frac));
        double s = 0;
        cplx z;
        for (i64 l = 1; l <= l_max; ++l) {
            if ((l - 1) % 64 == 0) {
                const long double t = static_cast<long double>(l) * frac;
                z = e(-static_cast<double>(t - std::floor(t)));
            }
            s += z.real() * hat[l];
            z *= step;
        }
        total.add(a * (hat[0] + 2 * s));
    }
    double tail = 0;
    for (i64 l = l_max + 1; l <= 100 * l_max + 100; ++l) {
        const double t = 2 * std::abs(hat[0]) * detail::w2_env(w2, static_cast<double>(l) / Z, cut.xi, tol);
        tail += t;
        if (t < 1e-30) break;
    }
    return {total.value() / Z, l_max, tail * mass.value() / Z};
}

struct Reconstruction {
    double reconstructed;  // volume + 2c Re(e^{-pi i/4} T_S'')
    double direct;         // direct double sum
    double residual;
    double volume;
    PoissonCheckpoint poisson;
    DualSumResult dual;
};

inline Reconstruction reconstruct_smoothed(const Window& win, const PlateauBump& w1, const PlateauBump& w2,
                                           double tol = 1e-12, DualForm form = DualForm::D, unsigned threads = 1) {
    Reconstruction r{};
    r.dual = dual_sum(win, w1, w2, form, tol, threads);
    r.volume = volume_term(win, w1, w2);
    r.reconstructed = r.volume + 2 * lemma1_c * (eighth_root_conj() * r.dual.value).real();
    r.direct = smoothed_count_direct(win, w1, w2);
    r.residual = std::abs(r.reconstructed - r.direct);
    r.poisson = poisson_in_n(win, w1, w2, tol);
    return r;
}

} // namespace mordell
