#include <gtest/gtest.h>

#include <algorithm>

#include "mordell/calibration.hpp"
#include "mordell/counts.hpp"
#include "oracles.hpp"

using namespace mordell;

TEST(Window, Invariants) {
    EXPECT_THROW(Window(0, 0), Error);
    EXPECT_THROW(Window(10, -1), Error);
    EXPECT_THROW(Window(10, 26), Error);  // N < 2 sqrt(X)
    EXPECT_NO_THROW(Window(10, 25));
    const Window w(1'000'000, 10'000);
    EXPECT_NEAR(w.M(), 10000.0, 1e-9);
    EXPECT_DOUBLE_EQ(w.Z(), 100.0);
    EXPECT_TRUE(std::isinf(Window(5, 0).Z()));
}

TEST(CountExact, PerfectPowersAtXZero) {
    const auto r = count_exact(Window(1000, 0), true);
    EXPECT_EQ(r.count, 3);
    ASSERT_TRUE(r.points.has_value());
    EXPECT_EQ((*r.points)[0], (LatticePoint{100, 1000, 0}));
    EXPECT_EQ((*r.points)[2], (LatticePoint{144, 1728, 0}));
}

TEST(CountExact, ContainsDavenportPointAtTwo) {
    const auto r = count_exact(Window(10, 4), true);
    const auto& pts = *r.points;
    EXPECT_NE(std::find(pts.begin(), pts.end(), LatticePoint{5, 11, -4}), pts.end());
}

TEST(CountExact, MatchesDoubleLoop) {
    EXPECT_EQ(count_exact(Window(100, 500)).count, oracle::count(100, 500));
    for (i64 N : {1, 7, 50, 333, 1000})
        for (i64 X : {0, 1, 5, 40, 200})
            if (N * N >= 4 * X) ASSERT_EQ(count_exact(Window(N, X)).count, oracle::count(N, X)) << N << ' ' << X;
}

TEST(CountExact, CollectedPointsAreConsistent) {
    const auto r = count_exact(Window(5000, 20000), true);
    ASSERT_EQ(static_cast<i64>(r.points->size()), r.count);
    for (const auto& p : *r.points) {
        EXPECT_EQ(static_cast<i128>(p.n) * p.n - static_cast<i128>(p.m) * p.m * p.m, p.b);
        EXPECT_LE(std::abs(p.b), 20000);
        EXPECT_GE(p.n, 5000);
        EXPECT_LE(p.n, 10000);
    }
}

TEST(CountExact, MonotoneInX) {
    for (i64 N : {100, 1000, 10000}) {
        i64 prev = -1;
        for (i64 X = 0; 4 * X <= N * N && X <= 200000; X = X * 2 + 1) {
            const i64 c = count_exact(Window(N, X)).count;
            ASSERT_GE(c, prev) << N << ' ' << X;
            prev = c;
        }
    }
}

TEST(Davenport, Examples) {
    const auto pts = davenport_points(0, 4);
    ASSERT_EQ(pts.size(), 3u);
    EXPECT_EQ(pts[0], (LatticePoint{1, 0, -1}));
    EXPECT_EQ(pts[1], (LatticePoint{5, 11, -4}));
    EXPECT_EQ(pts[2], (LatticePoint{17, 70, -13}));
}

TEST(Davenport, FoundByCollect) {
    const i64 N = 200'000, X = 5000;
    const auto found = *count_exact(Window(N, X), true).points;
    int checked = 0;
    for (const auto& p : davenport_points(0, 200)) {
        if (p.n < N || p.n > 2 * N || std::abs(p.b) > X) continue;
        ++checked;
        EXPECT_NE(std::find(found.begin(), found.end(), p), found.end()) << p.m << ' ' << p.n;
    }
    EXPECT_GT(checked, 0);
}

TEST(CountPrimitive, Examples) {
    const SpfTable t(100);
    EXPECT_EQ(count_primitive(Window(1000, 0), t), 0);
    EXPECT_EQ(count_primitive(Window(10, 4), t), count_exact(Window(10, 4)).count);
}

TEST(CountPrimitive, MatchesDirectEnumeration) {
    const SpfTable t(1000);
    for (i64 N : {10, 100, 1000, 3000})
        for (i64 X : {0, 4, 100, 2000})
            if (N * N >= 4 * X) {
                const Window w(N, X);
                const i64 p = count_primitive(w, t);
                ASSERT_EQ(p, oracle::count(N, X, true)) << N << ' ' << X;
                ASSERT_LE(p, count_exact(w).count);
            }
}

TEST(CountQuadric, Examples) {
    EXPECT_EQ(count_quadric(1, 1, 1, 0), 6);
    for (i64 A : {1, 3, 5})
        for (i64 B : {1, 4})
            for (i64 C : {2, 6}) EXPECT_EQ(count_quadric(A, B, C, B * B + A * C), 2 * A * (2 * B + 1) * (2 * C + 1));
    const double L = 8, M = 1e4;
    const double D = L / std::sqrt(M);
    EXPECT_EQ(count_quadric(48, 96, 200, D), oracle::quadric(48, 96, 200, static_cast<i64>(std::floor(D))));
}

TEST(CountQuadric, MatchesTripleLoop) {
    const std::vector<i64> sides = {1, 2, 3, 5, 8, 13, 21, 32};
    for (i64 A : sides)
        for (i64 B : sides)
            for (i64 C : sides)
                for (i64 D : {i64{0}, i64{1}, std::min(B * B, A * C) / 2, std::min(B * B, A * C)})
                    ASSERT_EQ(count_quadric(A, B, C, static_cast<double>(D)), oracle::quadric(A, B, C, D))
                        << A << ' ' << B << ' ' << C << ' ' << D;
}

TEST(QuadricBound, Examples) {
    const auto b = lemma2_bound(1, 1, 1, 0, 0.01, 10);
    EXPECT_DOUBLE_EQ(b.value, 20);
    EXPECT_TRUE(b.hypothesis_ok);
    EXPECT_GE(b.value, count_quadric(1, 1, 1, 0));
    const auto z = lemma2_bound(4, 7, 9, 0, 0.01, 3);
    EXPECT_NEAR(z.value, 3 * (4 + 7 * std::pow(36.0, 0.01)), 1e-12);
    EXPECT_FALSE(lemma2_bound(2, 2, 2, 5, 0.01, 1).hypothesis_ok);
}

TEST(QuadricBound, SweepAgreesWithCounterAtWorstPoint) {
    const auto w = quadric_sweep(32, calibration::lemma2_eps);
    EXPECT_EQ(count_quadric(w.A, w.B, w.C, static_cast<double>(w.D)), w.U);
    EXPECT_LE(w.ratio, calibration::lemma2_constant);
    const auto b = lemma2_bound(static_cast<double>(w.A), static_cast<double>(w.B), static_cast<double>(w.C),
                                static_cast<double>(w.D), calibration::lemma2_eps, calibration::lemma2_constant);
    EXPECT_GE(b.value, static_cast<double>(w.U));
}

TEST(CountErrorBound, DeskGridBelowFrozenConstant) {
    double worst = 0;
    for (i64 N : {10'000, 100'000, 1'000'000}) {
        const double M = std::cbrt(static_cast<double>(N) * N), Nd = static_cast<double>(N);
        const double lo = std::pow(Nd, 2.0 / 3), hi = std::pow(Nd, 1.2);
        std::vector<i64> xs = {0, 1, 10, 100};
        for (int j = 0; j <= 12; ++j) xs.push_back(std::llround(lo * std::pow(hi / lo, j / 12.0)));
        for (i64 X : xs) {
            const double T = static_cast<double>(count_exact(Window(N, X)).count);
            worst = std::max(worst, T / (static_cast<double>(X) * M / Nd + std::pow(Nd, 1.0 / 3 + 0.05)));
        }
    }
    EXPECT_LE(worst, calibration::theorem1_constant);
    EXPECT_GT(worst, 0.5 * calibration::theorem1_constant);  // constant is not vacuous
}
