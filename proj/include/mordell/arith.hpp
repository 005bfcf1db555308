#pragma once

// Exact integer and modular arithmetic: smallest-prime-factor sieve,
// factorization, modular inverses, square roots of quadratic congruences,
// and the exact reduction of the cubic phase 4x^3 - 3Dx modulo 27 l^2.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "mordell/error.hpp"

namespace mordell {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// ---------------------------------------------------------------------------
// Integer square roots
// ---------------------------------------------------------------------------

/// floor(sqrt(n)) for n >= 0, exact for every 128-bit input.
inline u128 isqrt(u128 n) {
    if (n < 2) return n;
    // Start above the root and run integer Newton downward.
    int bits = 0;
    for (u128 t = n; t; t >>= 1) ++bits;
    u128 x = u128(1) << ((bits + 1) / 2);
    for (;;) {
        const u128 y = (x + n / x) / 2;
        if (y >= x) return x;
        x = y;
    }
}

inline u64 isqrt(u64 n) { return static_cast<u64>(isqrt(static_cast<u128>(n))); }
inline i64 isqrt(i64 n) { return static_cast<i64>(isqrt(static_cast<u128>(n))); }

/// ceil(sqrt(n)) for n >= 0.
inline u128 ceil_sqrt(u128 n) {
    const u128 r = isqrt(n);
    return r * r == n ? r : r + 1;
}

inline bool is_perfect_square(i64 n) {
    if (n < 0) return false;
    const i64 r = isqrt(n);
    return r * r == n;
}

/// Floor and ceiling division for signed integers, b > 0.
inline i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && (a < 0)) --q;
    return q;
}
inline i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

/// a mod m in [0, m).
inline i64 mod_floor(i64 a, i64 m) {
    const i64 r = a % m;
    return r < 0 ? r + m : r;
}
inline i64 mod_floor(i128 a, i64 m) {
    const i64 r = static_cast<i64>(a % m);
    return r < 0 ? r + m : r;
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Sieve and factorization
// ---------------------------------------------------------------------------

inline constexpr i64 max_sieve_limit = 100'000'000;

/// Smallest-prime-factor table for 2 <= n <= limit. Immutable once built.
class SpfTable {
public:
    explicit SpfTable(i64 limit) : limit_(limit) {
        require(limit >= 2, ErrorKind::invalid_argument,
                "sieve limit must be at least 2, got " + std::to_string(limit));
        require(limit <= max_sieve_limit, ErrorKind::budget,
                "sieve limit " + std::to_string(limit) + " exceeds 1e8");
        spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
        std::vector<std::uint32_t> primes;
        // Linear sieve: every composite is struck exactly once by its spf.
        for (i64 i = 2; i <= limit; ++i) {
            if (spf_[i] == 0) {
                spf_[i] = static_cast<std::uint32_t>(i);
                primes.push_back(static_cast<std::uint32_t>(i));
            }
            for (std::uint32_t p : primes) {
                const i64 ip = i * static_cast<i64>(p);
                if (p > spf_[i] || ip > limit) break;
                spf_[ip] = p;
            }
        }
    }

    i64 limit() const noexcept { return limit_; }

    i64 spf(i64 n) const {
        require(n >= 2 && n <= limit_, ErrorKind::out_of_range,
                "spf query " + std::to_string(n) + " outside [2, " +
                    std::to_string(limit_) + "]");
        return spf_[static_cast<std::size_t>(n)];
    }

    bool is_prime(i64 n) const { return n >= 2 && spf(n) == n; }

private:
    i64 limit_;
    std::vector<std::uint32_t> spf_;
};

inline SpfTable build_spf(i64 limit) { return SpfTable(limit); }

struct PrimePower {
    i64 prime;
    int exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    i64 n = 1;
    std::vector<PrimePower> factors;
    int mobius = 1;
    bool squarefree = true;
};

inline Factorization factorize(i64 n, const SpfTable& table) {
    require(n >= 1, ErrorKind::invalid_argument, "factorize requires n >= 1");
    require(n <= table.limit(), ErrorKind::out_of_range,
            "factorize: " + std::to_string(n) + " exceeds sieve limit " +
                std::to_string(table.limit()));
    Factorization f;
    f.n = n;
    while (n > 1) {
        const i64 p = table.spf(n);
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.push_back({p, e});
        if (e > 1) f.squarefree = false;
    }
    f.mobius = f.squarefree ? ((f.factors.size() % 2) ? -1 : 1) : 0;
    return f;
}

inline i64 ipow(i64 base, int exp) {
    i64 r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

/// Moebius function table mu[0..limit] (mu[0] unused, set to 0).
inline std::vector<int> mobius_table(const SpfTable& table) {
    std::vector<int> mu(static_cast<std::size_t>(table.limit()) + 1, 0);
    mu[1] = 1;
    for (i64 n = 2; n <= table.limit(); ++n) {
        const i64 p = table.spf(n);
        const i64 m = n / p;
        mu[n] = (m % p == 0) ? 0 : -mu[m];
    }
    return mu;
}

// ---------------------------------------------------------------------------
// Modular inverse
// ---------------------------------------------------------------------------

/// x in [0, m) with a*x = 1 (mod m).
inline i64 mod_inverse(i64 a, i64 m) {
    require(m >= 1, ErrorKind::invalid_argument, "mod_inverse: modulus must be positive");
    i64 r0 = mod_floor(a, m), r1 = m;
    i64 s0 = 1, s1 = 0;
    while (r1 != 0) {
        const i64 q = r0 / r1;
        std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
        std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
    }
    if (r0 != 1 && m != 1)
        fail(ErrorKind::no_inverse, "mod_inverse: gcd(" + std::to_string(a) + ", " +
                                        std::to_string(m) + ") = " + std::to_string(r0));
    return mod_floor(s0, m);
}

// ---------------------------------------------------------------------------
// Quadratic congruences  coef * x^2 = D (mod q)
// ---------------------------------------------------------------------------

/// Sorted, duplicate-free list of x in [0, q) with coef * x^2 = D (mod q).
struct RootSet {
    i64 modulus = 1;
    i64 D = 0;
    int coef = 4;
    std::vector<i64> roots;
};

namespace detail {

/// Square root of a quadratic residue t modulo an odd prime p (Tonelli-Shanks).
inline u64 sqrt_mod_prime(u64 t, u64 p) {
    t %= p;
    if (t == 0) return 0;
    if (p % 4 == 3) return powmod(t, (p + 1) / 4, p);
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 c = powmod(z, q, p);
    u64 x = powmod(t, (q + 1) / 2, p);
    u64 b = powmod(t, q, p);
    int m = s;
    while (b != 1) {
        int i = 0;
        for (u64 bb = b; bb != 1; bb = mulmod(bb, bb, p)) ++i;
        u64 g = c;
        for (int j = 0; j < m - i - 1; ++j) g = mulmod(g, g, p);
        x = mulmod(x, g, p);
        c = mulmod(g, g, p);
        b = mulmod(b, c, p);
        m = i;
    }
    return x;
}

/// Roots of x^2 = t (mod p^a) for odd p and a unit t, via Hensel lifting.
/// Returns the empty list when t is a non-residue.
inline std::vector<i64> unit_sqrt_prime_power(i64 t, i64 p, int a) {
    const u64 up = static_cast<u64>(p);
    if (powmod(static_cast<u64>(mod_floor(t, p)), (up - 1) / 2, up) != 1) return {};
    i64 y = static_cast<i64>(sqrt_mod_prime(static_cast<u64>(mod_floor(t, p)), up));
    i64 pk = p;
    for (int k = 1; k < a; ++k) {
        const i64 next = pk * p;
        // y <- y - (y^2 - t) / (2y) mod p^(k+1); 2y is a unit since p is odd.
        const i64 f = mod_floor(static_cast<i128>(y) * y - t, next);
        const i64 inv = mod_inverse(mod_floor(2 * static_cast<i128>(y), next), next);
        y = mod_floor(static_cast<i128>(y) - static_cast<i128>(f) * inv, next);
        pk = next;
    }
    const i64 other = mod_floor(-y, pk);
    if (other == y) return {y};
    return {std::min(y, other), std::max(y, other)};
}

/// Roots modulo a single prime power pe = p^a.
inline std::vector<i64> roots_prime_power(i64 D, int coef, i64 p, int a) {
    const i64 pe = ipow(p, a);
    std::vector<i64> out;
    const bool enumerate = p == 2 || p == 3 || coef % p == 0 || pe <= 64;
    if (enumerate) {
        const i64 target = mod_floor(D, pe);
        for (i64 x = 0; x < pe; ++x)
            if (mod_floor(static_cast<i128>(coef) * x * x, pe) == target) out.push_back(x);
        return out;
    }
    // Odd p not dividing coef: reduce to x^2 = T (mod p^a).
    const i64 T = mod_floor(static_cast<i128>(mod_floor(D, pe)) * mod_inverse(coef, pe), pe);
    if (T == 0) {
        // x = 0 mod p^ceil(a/2).
        const i64 step = ipow(p, (a + 1) / 2);
        for (i64 x = 0; x < pe; x += step) out.push_back(x);
        return out;
    }
    int v = 0;
    i64 unit = T;
    while (unit % p == 0) {
        unit /= p;
        ++v;
    }
    if (v % 2) return out;
    const int half = v / 2;
    // x = p^half * y with y^2 = unit (mod p^(a-v)) and y taken mod p^(a-half).
    const auto ys = unit_sqrt_prime_power(unit, p, a - v);
    const i64 lift_mod = ipow(p, a - v);
    const i64 lifts = ipow(p, half);
    const i64 scale = ipow(p, half);
    for (i64 y0 : ys)
        for (i64 t = 0; t < lifts; ++t) out.push_back((y0 + t * lift_mod) * scale % pe);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

/// Solves coef * x^2 = D (mod q). coef is 4 for S(D;3l) and 1 for G(D;Y).
inline RootSet quad_roots(i64 D, i64 q, const SpfTable& table, int coef = 4) {
    require(q >= 1, ErrorKind::invalid_argument, "quad_roots: modulus must be positive");
    require(coef == 1 || coef == 4, ErrorKind::invalid_argument, "quad_roots: coef must be 1 or 4");
    RootSet rs{q, D, coef, {}};
    if (q == 1) {
        rs.roots = {0};
        return rs;
    }
    const Factorization f = factorize(q, table);
    std::vector<i64> acc{0};
    i64 acc_mod = 1;
    for (const auto& [p, a] : f.factors) {
        const auto local = detail::roots_prime_power(D, coef, p, a);
        if (local.empty()) return rs;
        const i64 pe = ipow(p, a);
        const i64 inv = mod_inverse(acc_mod % pe, pe);
        std::vector<i64> next;
        next.reserve(acc.size() * local.size());
        for (i64 r1 : acc)
            for (i64 r2 : local) {
                const i64 t = mod_floor(static_cast<i128>(r2 - r1) * inv, pe);
                next.push_back(r1 + acc_mod * t);
            }
        acc = std::move(next);
        acc_mod *= pe;
    }
    std::sort(acc.begin(), acc.end());
    rs.roots = std::move(acc);
    return rs;
}

// ---------------------------------------------------------------------------
// Cubic phase
// ---------------------------------------------------------------------------

/// (4x^3 - 3Dx) mod 27 l^2, exact.
inline i64 poly_phase_mod(i64 x, i64 D, i64 l) {
    require(l >= 1, ErrorKind::invalid_argument, "poly_phase_mod: l must be positive");
    const i128 mod = static_cast<i128>(27) * l * l;
    const i128 xm = x % mod;
    const i128 v = (4 * ((xm * xm) % mod) % mod * xm - 3 * static_cast<i128>(D % mod) * xm) % mod;
    return static_cast<i64>(v < 0 ? v + mod : v);
}

inline i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

} // namespace mordell
