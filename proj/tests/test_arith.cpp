#include <gtest/gtest.h>

#include "mordell/arith.hpp"
#include "mordell/summation.hpp"
#include "oracles.hpp"

using namespace mordell;

TEST(Sieve, SmallestPrimeFactor) {
    const SpfTable t10(10);
    EXPECT_EQ(t10.spf(4), 2);
    EXPECT_EQ(t10.spf(9), 3);
    EXPECT_EQ(t10.spf(7), 7);
    EXPECT_EQ(SpfTable(30).spf(30), 2);
    EXPECT_EQ(SpfTable(2).spf(2), 2);
}

TEST(Sieve, RejectsBadLimits) {
    EXPECT_THROW(SpfTable(1), Error);
    EXPECT_THROW(SpfTable(10).spf(11), Error);
}

TEST(Sieve, AgreesWithTrialDivision) {
    const SpfTable t(20000);
    for (i64 n = 2; n <= 20000; ++n) {
        i64 p = 2;
        while (n % p != 0) ++p;
        ASSERT_EQ(t.spf(n), p) << n;
    }
}

TEST(Factorize, Examples) {
    const SpfTable t(100);
    const auto one = factorize(1, t);
    EXPECT_TRUE(one.factors.empty());
    EXPECT_EQ(one.mobius, 1);

    const auto twelve = factorize(12, t);
    ASSERT_EQ(twelve.factors.size(), 2u);
    EXPECT_EQ(twelve.factors[0].prime, 2);
    EXPECT_EQ(twelve.factors[0].exponent, 2);
    EXPECT_EQ(twelve.factors[1].prime, 3);
    EXPECT_EQ(twelve.factors[1].exponent, 1);
    EXPECT_EQ(twelve.mobius, 0);

    const auto thirty = factorize(30, t);
    ASSERT_EQ(thirty.factors.size(), 3u);
    EXPECT_EQ(thirty.mobius, -1);
}

TEST(Factorize, ProductReconstructsN) {
    const SpfTable t(50000);
    for (i64 n = 1; n <= 50000; n += 7) {
        i64 prod = 1;
        for (const auto& pp : factorize(n, t).factors) prod *= ipow(pp.prime, pp.exponent);
        ASSERT_EQ(prod, n);
    }
}

TEST(Mobius, MatchesSquarefreeParity) {
    const SpfTable t(5000);
    const auto mu = mobius_table(t);
    for (i64 n = 1; n <= 5000; ++n) {
        int expect = 0;
        if (oracle::squarefree(n)) {
            int k = 0;
            i64 m = n;
            for (i64 p = 2; p <= m; ++p)
                if (m % p == 0) {
                    ++k;
                    m /= p;
                }
            expect = k % 2 ? -1 : 1;
        }
        ASSERT_EQ(mu[static_cast<std::size_t>(n)], expect) << n;
    }
}

TEST(ModInverse, Examples) {
    EXPECT_EQ(mod_inverse(1, 9), 1);
    EXPECT_EQ(mod_inverse(2, 9), 5);
    try {
        mod_inverse(3, 9);
        FAIL() << "expected no_inverse";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::no_inverse);
    }
}

TEST(ModInverse, NegativeArgumentsReduce) {
    for (i64 m = 2; m <= 200; ++m)
        for (i64 a = -m; a <= m; ++a)
            if (std::gcd(a, m) == 1) {
                const i64 inv = mod_inverse(a, m);
                ASSERT_GE(inv, 0);
                ASSERT_LT(inv, m);
                ASSERT_EQ(mod_floor(static_cast<i128>(a) * inv, m), 1 % m);
            }
}

TEST(QuadRoots, Examples) {
    const SpfTable t(100);
    EXPECT_EQ(quad_roots(1, 3, t).roots, (std::vector<i64>{1, 2}));
    EXPECT_EQ(quad_roots(0, 3, t).roots, (std::vector<i64>{0}));
    EXPECT_TRUE(quad_roots(2, 3, t).roots.empty());
}

// Exhaustive enumeration for q <= 600; the verify suite extends this to 2000.
TEST(QuadRoots, EqualsEnumeration) {
    const SpfTable t(10000);
    for (i64 q = 1; q <= 600; ++q) {
        std::vector<std::vector<i64>> by_res(static_cast<std::size_t>(q));
        for (i64 x = 0; x < q; ++x) by_res[static_cast<std::size_t>(4 * x * x % q)].push_back(x);
        for (i64 D = -100; D <= 100; ++D)
            ASSERT_EQ(quad_roots(D, q, t).roots, by_res[static_cast<std::size_t>(mod_floor(D, q))])
                << "q=" << q << " D=" << D;
    }
}

TEST(QuadRoots, UnitCoefficientAndHighPowers) {
    const SpfTable t(100000);
    for (i64 q : {729, 3125, 2401, 1024, 6561, 15625, 3 * 3 * 3 * 3 * 5 * 5 * 7}) {
        for (i64 D : {0, 1, 9, 81, 243, 625, 2187, -7, 49}) {
            std::vector<i64> expect;
            for (i64 x = 0; x < q; ++x)
                if (mod_floor(x * x - D, q) == 0) expect.push_back(x);
            ASSERT_EQ(quad_roots(D, q, t, 1).roots, expect) << "q=" << q << " D=" << D;
        }
    }
}

TEST(PolyPhase, Examples) {
    EXPECT_EQ(poly_phase_mod(1, 1, 1), 1);
    EXPECT_EQ(poly_phase_mod(0, 0, 5), 0);
}

TEST(PolyPhase, RepresentativeShiftIsExact) {
    const SpfTable t(10000);
    for (i64 l = 1; l <= 120; ++l)
        for (i64 D = -30; D <= 30; ++D)
            for (i64 x : quad_roots(D, 3 * l, t).roots) {
                const i128 mod = static_cast<i128>(27) * l * l;
                const i128 y = x + 3 * l;
                const i128 shifted = 4 * y * y * y - 3 * static_cast<i128>(D) * y;
                ASSERT_EQ(((shifted - poly_phase_mod(x, D, l)) % mod + mod) % mod, 0) << l << ' ' << D << ' ' << x;
            }
}

TEST(Arith, IntegerSquareRoots) {
    for (i64 n = 0; n <= 100000; ++n) {
        const i64 r = isqrt(n);
        ASSERT_LE(r * r, n);
        ASSERT_GT((r + 1) * (r + 1), n);
        ASSERT_EQ(is_perfect_square(n), r * r == n);
    }
    EXPECT_FALSE(is_perfect_square(-4));
    EXPECT_EQ(isqrt(static_cast<i64>(999999999999999999)), 999999999);
}

TEST(Summation, CompensationBeatsNaive) {
    CompensatedSum s;
    s.add(1.0);
    for (int i = 0; i < 1000000; ++i) s.add(1e-16);
    EXPECT_NEAR(s.value(), 1.0 + 1e-10, 1e-15);
}

TEST(Summation, ExactPhases) {
    EXPECT_NEAR(std::abs(e_frac<i64>(1, 4) - cplx(0, 1)), 0, 1e-15);
    EXPECT_NEAR(std::abs(e_frac<i64>(27 * 1000 + 5, 27) - e_frac<i64>(5, 27)), 0, 1e-15);
}
