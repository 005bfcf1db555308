#include <gtest/gtest.h>

#include <array>

#include "mordell/calibration.hpp"
#include "mordell/oscillatory.hpp"

using namespace mordell;

namespace {

// I(k, l) = int w1(x/M) e(-l x^{3/2} + k x) dx straight in x, long-double phase.
cplx brute_integral(i64 k, i64 l, double M, const PlateauBump& w1, int panels) {
    const std::array<double, 4> br = {w1.support_lo() * M, w1.plateau_lo() * M, w1.plateau_hi() * M,
                                      w1.support_hi() * M};
    auto f = [&](double x) {
        long double v = -static_cast<long double>(l) * std::pow(static_cast<long double>(x), 1.5L) +
                        static_cast<long double>(k) * x;
        v -= std::floor(v);
        return w1(x / M) * e(static_cast<double>(v));
    };
    return composite_gauss<cplx>(f, br, panels);
}

double lemma1_scale(i64 l, double M) { return std::pow(std::abs(static_cast<double>(l)), -1.5) * std::pow(M, -1.25); }

} // namespace

TEST(Oscillatory, NumericMatchesBruteForceAtSmallM) {
    const auto w1 = default_w1();
    for (auto [k, l] : std::vector<std::pair<i64, i64>>{{10, 1}, {15, 2}, {-10, 1}, {3, 1}, {40, 3}, {-25, -2}}) {
        const auto nr = osc_integral_numeric(k, l, 100, w1);
        const cplx brute = brute_integral(k, l, 100, w1, 1 << 13);
        EXPECT_LT(std::abs(nr.value - brute), 1e-11) << k << ' ' << l;
        EXPECT_EQ(nr.method, OscMethod::numeric_quadrature);
    }
}

TEST(Oscillatory, ReferenceValueAtStationaryPoint) {
    // x0 = 4k^2/9l^2 = 4444.4, inside the rising edge of w1(x/1e4).
    const auto w1 = default_w1();
    const auto nr = osc_integral_numeric(100, 1, 1e4, w1);
    const cplx fine = brute_integral(100, 1, 1e4, w1, 1 << 17);
    EXPECT_LT(std::abs(nr.value - fine), 2e-8);  // the x-space rule floors near 3e-9
    const auto as = osc_integral_asymptotic(100, 1, 1e4, w1, calibration::lemma1_c_prime);
    EXPECT_LT(std::abs(nr.value - as.value), calibration::lemma1_c_prime * lemma1_scale(1, 1e4));
    EXPECT_NEAR(std::abs(as.value), lemma1_c * 10.0 * w1(4.0 / 9.0), 1e-12);
}

TEST(Oscillatory, SignFlipConjugates) {
    const auto w1 = default_w1();
    for (auto [k, l] : std::vector<std::pair<i64, i64>>{{100, 1}, {250, 2}, {37, 1}, {-80, 1}}) {
        const cplx a = osc_integral_numeric(k, l, 1e4, w1).value;
        const cplx b = osc_integral_numeric(-k, -l, 1e4, w1).value;
        EXPECT_LT(std::abs(a - std::conj(b)), 1e-12 * std::max(1.0, std::abs(a))) << k << ' ' << l;
        if (k > 0) {
            const cplx aa = osc_integral_asymptotic(k, l, 1e4, w1, 10).value;
            const cplx bb = osc_integral_asymptotic(-k, -l, 1e4, w1, 10).value;
            EXPECT_LT(std::abs(aa - std::conj(bb)), 1e-12);
        }
    }
}

TEST(Oscillatory, NonStationaryRegimesAreNegligible) {
    const auto w1 = default_w1();
    const double M = 1e4, sq = std::sqrt(M);
    for (i64 l : {1, 3, 7}) {
        const double stat = std::sqrt(sq * l) / l;
        for (i64 k : {static_cast<i64>(0.6 * sq * l), static_cast<i64>(1.5 * sq * l)}) {
            EXPECT_LT(std::abs(osc_integral_numeric(-k, l, M, w1).value), 1e-8 * stat) << "opposite " << k << ' ' << l;
        }
        const i64 small_k = static_cast<i64>(w1.plateau_lo() * l * sq / 4);
        EXPECT_LT(std::abs(osc_integral_numeric(small_k, l, M, w1).value), 1e-8 * stat) << "small k, l=" << l;
    }
}

TEST(Oscillatory, AsymptoticOutsideSupportIsZero) {
    const auto w1 = default_w1();
    const auto r = osc_integral_asymptotic(10, 1, 1e4, w1, 10);  // u0 = 0.0044
    EXPECT_FALSE(r.in_support);
    EXPECT_EQ(r.value, cplx(0, 0));
    EXPECT_THROW(osc_integral_asymptotic(10, -1, 1e4, w1, 10), Error);
    EXPECT_THROW(osc_integral_asymptotic(0, 1, 1e4, w1, 10), Error);
    EXPECT_THROW(osc_integral_numeric(1, 0, 1e4, w1), Error);
}

TEST(Oscillatory, PrefactorIsExact) {
    // e(4k^3/27l^2) from exact residues, tested where floating k^3 would lose digits.
    const i64 k = 2'000'003, l = 7;
    const i128 num = static_cast<i128>(4) * k * k * k;
    const i64 den = 27 * l * l;
    const i64 r = static_cast<i64>(num % den);
    EXPECT_LT(std::abs(cubic_stationary_phase(k, l) - e(static_cast<double>(r) / den)), 1e-14);
}

TEST(W1Transform, ZeroIsRealPositive) {
    const cplx w0 = w1_transform(0, default_w1());
    EXPECT_GT(w0.real(), 0);
    EXPECT_NEAR(w0.imag(), 0, 1e-15);
    EXPECT_NEAR(w0.real(), 0.934321176680488, 1e-12);
}

TEST(W1Transform, ConjugateSymmetry) {
    const auto w1 = default_w1();
    EXPECT_LT(std::abs(w1_transform(3.7, w1) - std::conj(w1_transform(-3.7, w1))), 1e-13);
}

TEST(W1Transform, PolynomialDecayRegression) {
    const auto w1 = default_w1();
    double worst = 0;
    for (double y = 0.01; y <= 100; y += 0.0731)
        worst = std::max(worst, std::abs(w1_transform(y, w1)) * std::pow(1 + y, 8));
    EXPECT_LE(worst, calibration::w1_transform_poly_constant);
    EXPECT_GT(worst, 0.5 * calibration::w1_transform_poly_constant);
}

TEST(W1Table, MatchesAdaptiveQuadrature) {
    const auto w1 = default_w1();
    const W1Table table(w1, 120);
    double worst = 0;
    for (double y = -120; y <= 120; y += 0.173) worst = std::max(worst, std::abs(table(y) - w1_transform(y, w1)));
    EXPECT_LT(worst, 1e-12);
    EXPECT_THROW(table(121), Error);
}

TEST(TrapezoidTransform, MatchesBumpFourier) {
    const auto w2 = default_w2();
    const auto tr = bump_transform(w2);
    for (double xi : {0.0, 0.25, 1.5, 3.3, 9.9, 20.0}) EXPECT_LT(std::abs(tr(xi) - bump_fourier(w2, xi)), 1e-12) << xi;
}

TEST(Envelopes, DominateMeasuredDecay) {
    const auto w2 = default_w2();
    const auto tr2 = bump_transform(w2, 4096);
    const double h0 = tr2(0).real();
    for (double xi = 10; xi <= 70; xi += 0.137)
        ASSERT_LE(std::abs(tr2(xi)) / h0, calibration::w2_hat_envelope(xi)) << xi;

    const auto w1 = default_w1();
    const TrapezoidTransform tr1([&](double t) { return std::sqrt(t) * w1(t * t); }, std::sqrt(w1.support_lo()),
                                 std::sqrt(w1.support_hi()), 4096);
    const double W0 = tr1(0).real();
    for (double y = 50; y <= 400; y += 0.377)
        ASSERT_LE(std::abs(tr1(y)) / W0, calibration::w1_transform_envelope(y)) << y;
}

TEST(Envelopes, Cutoffs) {
    EXPECT_NEAR(calibration::w2_hat_envelope.cutoff(1e-12), 59.4, 0.1);
    EXPECT_NEAR(calibration::w1_transform_envelope.cutoff(1e-12), 459.4, 0.1);
    EXPECT_EQ(calibration::w2_hat_envelope(5), 1.0);
}
