#pragma once

// Complete exponential sums to square moduli and their cumulative series:
//   S(D;3l) = sum_{x mod 3l, 4x^2 = D (3l)} e((4x^3 - 3Dx) / 27l^2)
//   F(D;Y)  = sum_{l <= Y} S(D;3l) / sqrt(l)
//   G(D;Y)  = sum*_{l <= Y, (l,2D)=1} l^{-1/2} sum_{x^2 = D (l)} e((x^3 - 3Dx) / l^2)
//   H(A,c)  = sum_{x mod c} e(A x^3 / c),   P(A;X) = sum_{c <= X} H(A,c)

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>
#include <vector>

#include <fftw3.h>

#include "mordell/arith.hpp"
#include "mordell/error.hpp"
#include "mordell/parallel.hpp"
#include "mordell/summation.hpp"

namespace mordell {

struct SeriesCheckpoint {
    i64 Y;
    cplx value;
    i64 terms;  // nonzero contributions up to Y
};

// ---------------------------------------------------------------------------
// S(D;3l)
// ---------------------------------------------------------------------------

inline cplx s_sum(i64 D, i64 l, const SpfTable& table) {
    require(l >= 1, ErrorKind::invalid_argument, "s_sum: l must be positive");
    require(3 * l <= table.limit(), ErrorKind::out_of_range,
            "s_sum: 3l = " + std::to_string(3 * l) + " exceeds sieve limit");
    const RootSet rs = quad_roots(D, 3 * l, table, 4);
    const i64 mod = 27 * l * l;
    CompensatedComplexSum s;
    for (i64 x : rs.roots) s += e_frac(poly_phase_mod(x, D, l), mod);
    return s.value();
}

/// Oracle: scans every x in [0, 3l).
inline cplx s_sum_bruteforce(i64 D, i64 l) {
    require(l >= 1 && l <= 10'000, ErrorKind::budget, "s_sum_bruteforce: l outside [1, 1e4]");
    const i64 q = 3 * l, mod = 27 * l * l;
    const i64 target = mod_floor(D, q);
    CompensatedComplexSum s;
    for (i64 x = 0; x < q; ++x)
        if (mod_floor(4 * x * x, q) == target) s += e_frac(poly_phase_mod(x, D, l), mod);
    return s.value();
}

/// S(D;3l) for every D in [D_lo, D_hi] at once. One pass over x in [0, 3l)
/// finds the residue class 4x^2 mod 3l; along D = D0 + 3l j the phase moves
/// by -x/(3l) per step.
inline std::vector<cplx> s_sum_range(i64 l, i64 D_lo, i64 D_hi) {
    require(l >= 1 && D_lo <= D_hi, ErrorKind::invalid_argument, "s_sum_range: bad arguments");
    const i64 q = 3 * l;
    const i64 mod = 27 * l * l;
    std::vector<cplx> out(static_cast<std::size_t>(D_hi - D_lo + 1));
    i64 rho = 0;  // 4x^2 mod q, updated incrementally
    for (i64 x = 0; x < q; ++x) {
        if (x > 0) {
            rho += mod_floor(8 * (x - 1) + 4, q);
            if (rho >= q) rho -= q;
        }
        const i64 D0 = D_lo + mod_floor(rho - D_lo, q);
        if (D0 > D_hi) continue;
        const cplx step = e_frac(mod_floor(-9 * static_cast<i128>(l) * x, mod), mod);
        cplx z;
        int since_seed = 64;
        for (i64 D = D0; D <= D_hi; D += q) {
            if (since_seed == 64) {
                z = e_frac(poly_phase_mod(x, D, l), mod);
                since_seed = 0;
            }
            out[static_cast<std::size_t>(D - D_lo)] += z;
            z *= step;
            ++since_seed;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// F(D;Y)
// ---------------------------------------------------------------------------

namespace detail {
inline std::vector<i64> normalized_checkpoints(std::vector<i64> cps, i64 Y) {
    cps.push_back(Y);
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    require(cps.front() >= 1 && cps.back() <= Y, ErrorKind::invalid_argument,
            "checkpoints must lie in [1, Y]");
    return cps;
}
} // namespace detail

/// Cumulative F(D; .) at each checkpoint (Y itself is always included).
inline std::vector<SeriesCheckpoint> f_series(i64 D, i64 Y, std::vector<i64> checkpoints,
                                              const SpfTable& table) {
    require(Y >= 1, ErrorKind::invalid_argument, "f_series: Y must be positive");
    require(3 * Y <= table.limit(), ErrorKind::out_of_range, "f_series: 3Y exceeds sieve limit");
    const auto cps = detail::normalized_checkpoints(std::move(checkpoints), Y);
    std::vector<SeriesCheckpoint> out;
    CompensatedComplexSum acc;
    i64 terms = 0;
    std::size_t next = 0;
    for (i64 l = 1; l <= Y; ++l) {
        const cplx s = s_sum(D, l, table);
        if (s != cplx(0, 0)) {
            ++terms;
            acc += s / std::sqrt(static_cast<double>(l));
        }
        if (l == cps[next]) {
            out.push_back({l, acc.value(), terms});
            ++next;
        }
    }
    return out;
}

struct FSweep {
    std::vector<i64> checkpoints;
    std::vector<std::vector<cplx>> values;  // [checkpoint][D - D_lo]
    std::vector<std::vector<i64>> terms;    // nonzero S(D;3l) up to the checkpoint
};

inline constexpr std::size_t f_sweep_block = 65536;

/// F(D; Y_k) for all D in [D_lo, D_hi] and every checkpoint Y_k. The
/// D-range is cut into fixed blocks from D_lo, handed to threads
/// dynamically, so values do not depend on the thread count.
inline FSweep f_sweep(i64 D_lo, i64 D_hi, i64 Y, std::vector<i64> checkpoints, unsigned threads = 1) {
    require(D_lo <= D_hi && Y >= 1, ErrorKind::invalid_argument, "f_sweep: bad arguments");
    require(D_hi - D_lo < 10'000'000, ErrorKind::budget, "f_sweep: D-range wider than 1e7");
    FSweep out;
    out.checkpoints = detail::normalized_checkpoints(std::move(checkpoints), Y);
    const auto& cps = out.checkpoints;
    const std::size_t width = static_cast<std::size_t>(D_hi - D_lo + 1);
    out.values.assign(cps.size(), std::vector<cplx>(width));
    out.terms.assign(cps.size(), std::vector<i64>(width));
    const std::size_t blocks = (width + f_sweep_block - 1) / f_sweep_block;
    parallel_for_dynamic(blocks, threads, [&](std::size_t blk) {
        const std::size_t b = blk * f_sweep_block, e = std::min(width, b + f_sweep_block);
        const i64 lo = D_lo + static_cast<i64>(b), hi = D_lo + static_cast<i64>(e) - 1;
        std::vector<CompensatedComplexSum> acc(e - b);
        std::vector<i64> terms(e - b);
        std::size_t next = 0;
        for (i64 l = 1; l <= Y; ++l) {
            const auto s = s_sum_range(l, lo, hi);
            const double inv = 1.0 / std::sqrt(static_cast<double>(l));
            for (std::size_t i = 0; i < s.size(); ++i)
                if (s[i] != cplx(0, 0)) {
                    acc[i].add(s[i] * inv);
                    ++terms[i];
                }
            if (l == cps[next]) {
                for (std::size_t i = 0; i < s.size(); ++i) {
                    out.values[next][b + i] = acc[i].value();
                    out.terms[next][b + i] = terms[i];
                }
                ++next;
            }
        }
    });
    return out;
}

/// D admitted to the F(D;Y) histogram: not a square, not 2 mod 3.
inline bool f_admissible(i64 D) { return !is_perfect_square(D) && mod_floor(D, 3) != 2; }

struct HistogramSpec {
    double lo = 0;
    double hi = 1;
    int bins = 10;
    std::vector<i64> counts;
    i64 below = 0;  // samples < lo
    i64 above = 0;  // samples >= hi

    HistogramSpec() = default;
    HistogramSpec(double lo_, double hi_, int bins_) : lo(lo_), hi(hi_), bins(bins_) {
        require(bins_ >= 1 && lo_ < hi_, ErrorKind::invalid_argument, "histogram: bad range or bins");
        counts.assign(static_cast<std::size_t>(bins_), 0);
    }

    void add(double v) {
        if (v < lo) {
            ++below;
            return;
        }
        if (v >= hi) {
            ++above;
            return;
        }
        auto k = static_cast<std::size_t>((v - lo) / (hi - lo) * bins);
        if (k >= counts.size()) k = counts.size() - 1;
        ++counts[k];
    }
    double edge(int k) const { return lo + (hi - lo) * k / bins; }
    i64 admitted() const {
        i64 s = 0;
        for (i64 c : counts) s += c;
        return s;
    }
};

struct SweepStats {
    HistogramSpec histogram;
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    double mean = 0;
    i64 samples = 0;
    i64 positive = 0;
    std::vector<i64> params;   // admitted D (or A) in order
    std::vector<double> values;
};

inline SweepStats collect_stats(const std::vector<i64>& params, const std::vector<double>& values,
                                HistogramSpec spec) {
    SweepStats st;
    st.histogram = std::move(spec);
    CompensatedSum sum;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        st.histogram.add(v);
        st.min = std::min(st.min, v);
        st.max = std::max(st.max, v);
        sum.add(v);
        if (v > 0) ++st.positive;
    }
    st.samples = static_cast<i64>(values.size());
    st.mean = st.samples ? sum.value() / static_cast<double>(st.samples) : 0.0;
    st.params = params;
    st.values = values;
    return st;
}

/// Histogram of F(D;Y) over admissible D in [D_lo, D_hi].
inline SweepStats f_histogram(i64 D_lo, i64 D_hi, i64 Y, HistogramSpec spec, unsigned threads = 1) {
    const auto sweep = f_sweep(D_lo, D_hi, Y, {}, threads);
    const auto& all = sweep.values.back();
    std::vector<i64> params;
    std::vector<double> values;
    for (i64 D = D_lo; D <= D_hi; ++D)
        if (f_admissible(D)) {
            params.push_back(D);
            values.push_back(all[static_cast<std::size_t>(D - D_lo)].real());
        }
    return collect_stats(params, values, std::move(spec));
}

/// F_0(0;Y) = sum_{g <= Y, 2|g} g^{-1/2} + sum_{g <= Y} g^{-1/2}.
inline double f0_main_term(i64 Y) {
    CompensatedSum s;
    for (i64 g = 1; g <= Y; ++g) {
        const double t = 1.0 / std::sqrt(static_cast<double>(g));
        s.add(g % 2 == 0 ? 2 * t : t);
    }
    return s.value();
}

// ---------------------------------------------------------------------------
// G(d^2;Y) and its factorization form
// ---------------------------------------------------------------------------

namespace detail {
inline bool g_modulus_ok(const Factorization& f, i64 d) {
    return f.squarefree && std::gcd(f.n, 2 * d) == 1;
}
} // namespace detail

/// G(D;Y) for a general integer D: squarefree l <= Y coprime to 2D.
inline cplx g_series(i64 D, i64 Y, const SpfTable& table) {
    require(D != 0, ErrorKind::invalid_argument, "g_series: D must be nonzero");
    require(Y >= 1 && Y <= table.limit(), ErrorKind::out_of_range, "g_series: Y outside sieve");
    CompensatedComplexSum total;
    for (i64 l = 1; l <= Y; ++l) {
        const Factorization f = factorize(l, table);
        if (!f.squarefree || std::gcd(l, 2 * D) != 1) continue;
        const RootSet rs = quad_roots(D, l, table, 1);
        const i64 mod = l * l;
        CompensatedComplexSum inner;
        for (i64 x : rs.roots) {
            const i128 v = (static_cast<i128>(x) * x * x - 3 * static_cast<i128>(D) * x) % mod;
            inner += e_frac(mod_floor(v, mod), mod);
        }
        total += inner.value() / std::sqrt(static_cast<double>(l));
    }
    return total.value();
}

/// G(d^2;Y) from the roots of x^2 = d^2 (mod l).
inline cplx g_sum(i64 d, i64 Y, const SpfTable& table) {
    require(d != 0, ErrorKind::invalid_argument, "g_sum: d must be nonzero");
    return g_series(d * d, Y, table);
}

/// G(d^2;Y) via coprime factorizations l = l1 l2:
/// each term is e(2d^3 (inv(l1^2)/l2^2 - inv(l2^2)/l1^2)) / sqrt(l).
inline cplx g_sum_factored(i64 d, i64 Y, const SpfTable& table, bool cross_check = true) {
    require(d != 0, ErrorKind::invalid_argument, "g_sum_factored: d must be nonzero");
    require(Y >= 1 && Y <= table.limit(), ErrorKind::out_of_range, "g_sum_factored: Y outside sieve");
    CompensatedComplexSum total;
    for (i64 l = 1; l <= Y; ++l) {
        const Factorization f = factorize(l, table);
        if (!detail::g_modulus_ok(f, d)) continue;
        const i64 mod = l * l;
        const i64 two_d3 = mod_floor(2 * static_cast<i128>(d) * d * d, mod);
        const std::size_t k = f.factors.size();
        CompensatedComplexSum inner;
        for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
            i64 l1 = 1;
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1) l1 *= f.factors[i].prime;
            const i64 l2 = l / l1;
            const i64 l1sq = l1 * l1, l2sq = l2 * l2;
            const i64 inv1 = l2sq == 1 ? 0 : mod_inverse(l1sq % l2sq, l2sq);  // inverse of l1^2 mod l2^2
            const i64 inv2 = l1sq == 1 ? 0 : mod_inverse(l2sq % l1sq, l1sq);  // inverse of l2^2 mod l1^2
            const i128 bracket = static_cast<i128>(inv1) * l1sq - static_cast<i128>(inv2) * l2sq;
            const i64 num = mod_floor(static_cast<i128>(two_d3) * mod_floor(bracket, mod), mod);
            inner += e_frac(num, mod);
        }
        total += inner.value() / std::sqrt(static_cast<double>(l));
    }
    if (cross_check) {
        const cplx direct = g_sum(d, Y, table);
        if (std::abs(direct - total.value()) > 1e-9)
            fail(ErrorKind::internal_consistency, "g_sum_factored disagrees with g_sum for d = " +
                                                      std::to_string(d) + ", Y = " + std::to_string(Y));
    }
    return total.value();
}

enum class RhsVariant { plain, cosine };

/// plain:  2 sum*_{l <= Y, (l,2d)=1} l^{-1/2}
/// cosine: sum*_{l <= Y, (l,2d)=1} 2 cos(4 pi d^3 / l^2) / sqrt(l)
inline double g_conjectural_rhs(i64 d, i64 Y, RhsVariant variant, const SpfTable& table) {
    require(d != 0, ErrorKind::invalid_argument, "g_conjectural_rhs: d must be nonzero");
    require(Y >= 1 && Y <= table.limit(), ErrorKind::out_of_range, "g_conjectural_rhs: Y outside sieve");
    CompensatedSum s;
    for (i64 l = 1; l <= Y; ++l) {
        const Factorization f = factorize(l, table);
        if (!detail::g_modulus_ok(f, d)) continue;
        const double inv = 1.0 / std::sqrt(static_cast<double>(l));
        if (variant == RhsVariant::plain) {
            s.add(2 * inv);
        } else {
            const i64 mod = l * l;
            // cos(4 pi d^3 / l^2) = Re e(2 d^3 / l^2), reduced exactly
            const i64 num = mod_floor(2 * static_cast<i128>(d) * d * d, mod);
            s.add(2 * e_frac(num, mod).real() * inv);
        }
    }
    return s.value();
}

// ---------------------------------------------------------------------------
// Completed sum  sum*_{alpha mod q^2} e(beta inv(alpha)^2 / q^2)
// ---------------------------------------------------------------------------

inline cplx completed_salie_check(i64 beta, i64 q) {
    require(q >= 1 && q % 2 == 1 && std::gcd(mod_floor(beta, q), q) == 1, ErrorKind::invalid_argument,
            "completed_salie_check requires q odd and gcd(2 beta, q) = 1");
    const i64 mod = q * q;
    const i64 b = mod_floor(beta, mod);
    CompensatedComplexSum s;
    for (i64 a = 0; a < mod; ++a) {
        if (std::gcd(a, q) != 1) continue;
        const i64 inv = mod_inverse(a, mod);
        s += e_frac(mod_floor(static_cast<i128>(b) * inv % mod * inv, mod), mod);
    }
    return s.value();
}

/// max over beta in (Z/q^2)^* of |completed sum|, all beta at once.
inline double completed_salie_max(i64 q) {
    require(q >= 1 && q % 2 == 1, ErrorKind::invalid_argument, "completed_salie_max requires odd q");
    const i64 mod = q * q;
    std::vector<double> cs(static_cast<std::size_t>(mod)), sn(static_cast<std::size_t>(mod));
    for (i64 j = 0; j < mod; ++j) {
        const cplx z = e_frac(j, mod);
        cs[j] = z.real();
        sn[j] = z.imag();
    }
    std::vector<double> re(static_cast<std::size_t>(mod)), im(static_cast<std::size_t>(mod));
    for (i64 a = 0; a < mod; ++a) {
        if (std::gcd(a, q) != 1) continue;
        const i64 inv = mod_inverse(a, mod);
        const i64 s = static_cast<i64>(static_cast<i128>(inv) * inv % mod);
        i64 ph = 0;
        for (i64 b = 0; b < mod; ++b) {
            re[b] += cs[ph];
            im[b] += sn[ph];
            ph += s;
            if (ph >= mod) ph -= mod;
        }
    }
    double worst = 0;
    for (i64 b = 0; b < mod; ++b)
        if (std::gcd(b, q) == 1) worst = std::max(worst, std::hypot(re[b], im[b]));
    return worst;
}

// ---------------------------------------------------------------------------
// Cubic Gauss sums and P(A;X)
// ---------------------------------------------------------------------------

inline cplx cubic_gauss_h(i64 A, i64 c) {
    require(c >= 1, ErrorKind::invalid_argument, "cubic_gauss_h: c must be positive");
    const i64 a = mod_floor(A, c);
    CompensatedComplexSum s;
    for (i64 x = 0; x < c; ++x) {
        const i64 x3 = static_cast<i64>(static_cast<i128>(x) * x % c * x % c);
        s += e_frac(static_cast<i64>(static_cast<i128>(a) * x3 % c), c);
    }
    return s.value();
}

inline constexpr i64 patterson_naive_limit = 100'000;

/// Cumulative P(A; .) by direct evaluation of each H(A,c).
inline std::vector<SeriesCheckpoint> patterson_p(i64 A, i64 X, std::vector<i64> checkpoints = {}) {
    require(A != 0, ErrorKind::invalid_argument, "patterson_p: A must be nonzero");
    require(X >= 1, ErrorKind::invalid_argument, "patterson_p: X must be positive");
    require(X <= patterson_naive_limit, ErrorKind::budget, "patterson_p: X above naive budget 1e5");
    const auto cps = detail::normalized_checkpoints(std::move(checkpoints), X);
    std::vector<SeriesCheckpoint> out;
    CompensatedComplexSum acc;
    i64 terms = 0;
    std::size_t next = 0;
    for (i64 c = 1; c <= X; ++c) {
        const cplx h = cubic_gauss_h(A, c);
        if (std::abs(h) > 1e-9) ++terms;
        acc += h;
        if (c == cps[next]) {
            out.push_back({c, acc.value(), terms});
            ++next;
        }
    }
    return out;
}

enum class PattersonMode { naive, batch };

namespace detail {

/// Serialises FFTW planning, which is not thread-safe.
inline std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

/// Real DFT magnitudes sum_y r[y] cos(2 pi a y / c) for a in [0, c/2].
inline std::vector<double> real_dft_cos(const std::vector<double>& r) {
    const int n = static_cast<int>(r.size());
    std::vector<double> in(r);
    fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        plan = fftw_plan_dft_r2c_1d(n, in.data(), out, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::vector<double> res(static_cast<std::size_t>(n / 2 + 1));
    for (int k = 0; k <= n / 2; ++k) res[k] = out[k][0];
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(out);
    return res;
}

} // namespace detail

/// P(A;X) for every A in [A_lo, A_hi]. H(A,c) is real (x -> -x), so only
/// cosines are accumulated.
///   naive: per c, sum over x of cos(2 pi A x^3 / c) with A advanced incrementally.
///   batch: per c, cube counts r3(y,c) then either direct evaluation at the
///          needed residues or one real FFT of length c, whichever is cheaper.
inline std::vector<double> patterson_sweep(i64 A_lo, i64 A_hi, i64 X, PattersonMode mode,
                                           unsigned threads = 1) {
    require(A_lo <= A_hi, ErrorKind::invalid_argument, "patterson_sweep: empty A range");
    require(X >= 1, ErrorKind::invalid_argument, "patterson_sweep: X must be positive");
    require(X <= 10'000'000, ErrorKind::budget, "patterson_sweep: X above 1e7");
    const std::size_t nA = static_cast<std::size_t>(A_hi - A_lo + 1);
    if (mode == PattersonMode::naive)
        require(X <= patterson_naive_limit, ErrorKind::budget, "patterson_sweep: naive mode needs X <= 1e5; use batch");
    if (mode == PattersonMode::naive)
        require(static_cast<double>(nA) * static_cast<double>(X) * static_cast<double>(X) / 2 <= 1e12,
                ErrorKind::budget, "patterson_sweep: naive mode above 1e12 operations; use batch");
    std::vector<double> result(nA);
    // Fixed A-blocks keep the direct/FFT choice, hence rounding, independent of threads.
    const std::size_t block = mode == PattersonMode::naive ? 64 : 8192;
    const std::size_t blocks = (nA + block - 1) / block;
    parallel_for_dynamic(blocks, threads, [&](std::size_t blk) {
        const std::size_t b = blk * block, e = std::min(nA, b + block);
        const i64 lo = A_lo + static_cast<i64>(b);
        const std::size_t n = e - b;
        std::vector<CompensatedSum> P(n);
        std::vector<double> H(n);
        std::vector<double> cosine;
        std::vector<i64> cube;
        std::vector<double> r3;
        for (i64 c = 1; c <= X; ++c) {
            cosine.resize(static_cast<std::size_t>(c));
            for (i64 j = 0; j < c; ++j) cosine[j] = e_frac(j, c).real();
            cube.resize(static_cast<std::size_t>(c));
            for (i64 x = 0; x < c; ++x) cube[x] = static_cast<i64>(static_cast<i128>(x) * x % c * x % c);
            std::fill(H.begin(), H.end(), 0.0);
            if (mode == PattersonMode::naive) {
                for (i64 x = 0; x < c; ++x) {
                    const i64 s = cube[x];
                    i64 ph = mod_floor(static_cast<i128>(lo) * s, c);
                    for (std::size_t i = 0; i < n; ++i) {
                        H[i] += cosine[ph];
                        ph += s;
                        if (ph >= c) ph -= c;
                    }
                }
            } else {
                r3.assign(static_cast<std::size_t>(c), 0.0);
                for (i64 x = 0; x < c; ++x) r3[cube[x]] += 1;
                std::vector<std::pair<i64, double>> support;
                for (i64 y = 0; y < c; ++y)
                    if (r3[y] != 0) support.emplace_back(y, r3[y]);
                const double direct_cost = static_cast<double>(std::min<i64>(static_cast<i64>(n), c)) *
                                           static_cast<double>(support.size());
                const double fft_cost = 5.0 * c * std::log2(static_cast<double>(c) + 1);
                if (direct_cost <= fft_cost) {
                    // Evaluate each distinct residue a = A mod c once.
                    std::vector<double> by_res;
                    if (static_cast<i64>(n) >= c) by_res.assign(static_cast<std::size_t>(c), 0.0);
                    for (std::size_t i = 0; i < n; ++i) {
                        const i64 a = mod_floor(lo + static_cast<i64>(i), c);
                        if (!by_res.empty() && i >= static_cast<std::size_t>(c)) {
                            H[i] = by_res[a];
                            continue;
                        }
                        double h = 0;
                        for (const auto& [y, cnt] : support)
                            h += cnt * cosine[static_cast<std::size_t>(static_cast<i128>(a) * y % c)];
                        H[i] = h;
                        if (!by_res.empty()) by_res[a] = h;
                    }
                } else {
                    const auto dft = detail::real_dft_cos(r3);
                    for (std::size_t i = 0; i < n; ++i) {
                        i64 a = mod_floor(lo + static_cast<i64>(i), c);
                        if (a > c / 2) a = c - a;
                        H[i] = dft[a];
                    }
                }
            }
            for (std::size_t i = 0; i < n; ++i) P[i].add(H[i]);
        }
        for (std::size_t i = 0; i < n; ++i) result[b + i] = P[i].value();
    });
    return result;
}

} // namespace mordell
