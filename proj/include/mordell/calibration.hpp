#pragma once

// Frozen constants measured once for the default weights. Regression tests
// re-measure them; the CLI manifest records a hash of this table.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

namespace mordell {

/// Relative envelope min(1, 10^{a - b sqrt|x|}), valid for |x| >= valid_from.
struct DecayEnvelope {
    double log10_a;
    double slope;
    double valid_from;

    double operator()(double x) const {
        x = std::abs(x);
        if (x < valid_from) return 1.0;
        return std::min(1.0, std::pow(10.0, log10_a - slope * std::sqrt(x)));
    }
    /// Smallest |x| >= valid_from beyond which the envelope stays below tol.
    double cutoff(double tol) const {
        const double r = (log10_a - std::log10(tol)) / slope;
        return std::max(valid_from, r * r);
    }
};

namespace calibration {

/// |w2-hat(xi)| / w2-hat(0) for w2 = (-2, -1, 1, 2); measured to xi = 70, margin 10.
inline constexpr DecayEnvelope w2_hat_envelope{0.714, 1.65, 10.0};

/// |W1(y)| / W1(0) for w1 = (0.35, 0.5, 2, 2.8); measured to y = 400, margin 10.
inline constexpr DecayEnvelope w1_transform_envelope{-0.04, 0.558, 50.0};

/// |w-hat(xi)| <= C w-hat(0) (1 + |xi|)^{-10} for |xi| <= 50, default w2.
inline constexpr double w2_hat_poly_constant = 4.5e5;

/// |W1(y)| <= C_W (1 + |y|)^{-8} for |y| <= 100.
inline constexpr double w1_transform_poly_constant = 2.5e9;

/// |numeric - main term| <= c' |l|^{-3/2} M^{-5/4} on the stationary grid.
inline constexpr double lemma1_c_prime = 32;

/// U(A,B,C,D) <= K (A(1 + sqrt D) + B(1 + D)(AC)^eps), eps below.
inline constexpr double lemma2_eps = 0.01;
inline constexpr double lemma2_constant = 22;

/// sup T(N,X) / (XM/N + N^{1/3 + 0.05}) over the desk grid.
inline constexpr double theorem1_constant = 0.45;

/// |T_S - volume| <= C (N^{1/3+0.05} + X^{1/2} N^{0.05}).
inline constexpr double theorem2_constant = 0.6;

/// |T_S''| <= c_triv M^{3/4} Z^{1/2}.
inline constexpr double dual_trivial_constant = 0.07;

/// |F(0;Y) - F_0(0;Y)| <= C Y^{5/18 + 0.05} for Y in {1e3, 1e4, 1e5}.
inline constexpr double f1_constant = 0.3;

/// Canonical text of the table above, hashed into run manifests.
inline std::string fixture_text() {
    auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    std::string s;
    s += "w2_hat_envelope=" + num(w2_hat_envelope.log10_a) + "," + num(w2_hat_envelope.slope) + "," +
         num(w2_hat_envelope.valid_from) + "\n";
    s += "w1_transform_envelope=" + num(w1_transform_envelope.log10_a) + "," + num(w1_transform_envelope.slope) +
         "," + num(w1_transform_envelope.valid_from) + "\n";
    s += "w2_hat_poly_constant=" + num(w2_hat_poly_constant) + "\n";
    s += "w1_transform_poly_constant=" + num(w1_transform_poly_constant) + "\n";
    s += "lemma1_c_prime=" + num(lemma1_c_prime) + "\n";
    s += "lemma2_eps=" + num(lemma2_eps) + "\nlemma2_constant=" + num(lemma2_constant) + "\n";
    s += "theorem1_constant=" + num(theorem1_constant) + "\n";
    s += "theorem2_constant=" + num(theorem2_constant) + "\n";
    s += "dual_trivial_constant=" + num(dual_trivial_constant) + "\n";
    s += "f1_constant=" + num(f1_constant) + "\n";
    return s;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string fixture_hash() {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(fixture_text())));
    return buf;
}

} // namespace calibration
} // namespace mordell
