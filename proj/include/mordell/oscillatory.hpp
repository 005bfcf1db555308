#pragma once

// I(k, l) = int w1(x/M) e(-l x^{3/2} + k x) dx, numerically and by its
// stationary-phase main term, plus the Fourier transforms the dual sums need:
// w-hat for a plateau bump and W1(y) = int t^{1/2} w1(t^2) e(-y t) dt.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mordell/arith.hpp"
#include "mordell/bump.hpp"
#include "mordell/error.hpp"
#include "mordell/quadrature.hpp"
#include "mordell/summation.hpp"

namespace mordell {

/// c = 2 sqrt(2) / 3.
inline const double lemma1_c = 2.0 * std::numbers::sqrt2 / 3.0;

/// e^{-pi i/4} = (1 - i)/sqrt(2).
inline cplx eighth_root_conj() { return cplx(1.0, -1.0) / std::numbers::sqrt2; }

enum class OscMethod { numeric_quadrature, stationary_phase };

struct OscIntegralResult {
    cplx value;
    OscMethod method;
    double est_error = 0;
    bool in_support = true;  // stationary point inside supp w1(./M)
    int panels = 0;
};

/// e(4k^3 / 27 l^2) with the numerator reduced exactly.
inline cplx cubic_stationary_phase(i64 k, i64 l) {
    const i64 mod = 27 * l * l;
    const i128 k3 = static_cast<i128>(k) * k * k;
    return e_frac(mod_floor(4 * k3, mod), mod);
}

namespace detail {

struct ChebyshevLobatto {
    int n;
    std::vector<double> x;  // descending, x[0] = 1
    Eigen::MatrixXd D;      // differentiation on [-1, 1]
};

inline const ChebyshevLobatto& cheb_lobatto(int n) {
    static thread_local std::vector<ChebyshevLobatto> cache;
    for (const auto& c : cache)
        if (c.n == n) return c;
    ChebyshevLobatto c{n, std::vector<double>(n), Eigen::MatrixXd::Zero(n, n)};
    const int N = n - 1;
    for (int j = 0; j < n; ++j) c.x[j] = std::cos(std::numbers::pi * j / N);
    auto cw = [&](int j) { return (j == 0 || j == N ? 2.0 : 1.0) * (j % 2 ? -1.0 : 1.0); };
    for (int i = 0; i < n; ++i) {
        double row = 0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            c.D(i, j) = cw(i) / cw(j) / (c.x[i] - c.x[j]);
            row += c.D(i, j);
        }
        c.D(i, i) = -row;
    }
    cache.push_back(std::move(c));
    return cache.back();
}

/// Integrand data for I after x = s^2, with e(4k^3/27l^2) factored out:
/// amplitude g(s) = 2 s w1(s^2/M), phase Psi(s) = -l (s - s0)^2 (s + s0/2).
struct Lemma1Integrand {
    double l;
    long double s0;
    double M;
    const PlateauBump* w1;

    double amp(double s) const { return 2 * s * (*w1)(s * s / M); }
    /// Psi mod 1, in extended precision.
    double phase_frac(double s) const {
        const long double d = static_cast<long double>(s) - s0;
        const long double v = -static_cast<long double>(l) * d * d * (static_cast<long double>(s) + s0 / 2);
        return static_cast<double>(v - std::floor(v));
    }
    /// d theta / ds with theta = 2 pi Psi.
    double dtheta(double s) const { return -6.0 * std::numbers::pi * l * s * static_cast<double>(s - s0); }
};

/// Levin collocation on [a, b]: solve p' + i theta' p = g at Chebyshev-Lobatto
/// nodes, then int g e^{i theta} = p(b) e^{i theta(b)} - p(a) e^{i theta(a)}.
inline cplx levin_panel(const Lemma1Integrand& f, double a, double b, cplx ea, cplx eb, int n) {
    const auto& c = cheb_lobatto(n);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    Eigen::MatrixXcd A = c.D.cast<cplx>() / half;
    Eigen::VectorXcd rhs(n);
    for (int j = 0; j < n; ++j) {
        const double s = mid + half * c.x[j];
        A(j, j) += cplx(0, f.dtheta(s));
        rhs(j) = f.amp(s);
    }
    const Eigen::VectorXcd p = A.partialPivLu().solve(rhs);
    return p(0) * eb - p(n - 1) * ea;
}

inline cplx gauss_panel(const Lemma1Integrand& f, double a, double b, const GaussRule& g) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    cplx acc = 0;
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
        const double s = mid + half * g.nodes[j];
        acc += g.weights[j] * f.amp(s) * e(f.phase_frac(s));
    }
    return acc * half;
}

} // namespace detail

inline constexpr int lemma1_max_panels = 1 << 15;

/// I(k, l) by quadrature in s = sqrt(x): a Gauss-Legendre zone of about two
/// phase cycles around the stationary point s0 = 2k/(3l), and adaptive
/// Levin panels elsewhere, graded geometrically away from s0.
inline OscIntegralResult osc_integral_numeric(i64 k, i64 l, double M, const PlateauBump& w1,
                                              double rel_tol = 1e-13) {
    require(l != 0, ErrorKind::invalid_argument, "osc_integral: l must be nonzero");
    require(M >= 4, ErrorKind::invalid_argument, "osc_integral: M must be >= 4");
    require(w1.support_lo() > 0, ErrorKind::invalid_argument, "osc_integral: w1 support must be in (0, inf)");
    const long double s0 = 2.0L * k / (3.0L * l);
    const detail::Lemma1Integrand f{static_cast<double>(l), s0, M, &w1};
    const double sa = std::sqrt(w1.support_lo() * M), sb = std::sqrt(w1.support_hi() * M);
    const double scale = std::sqrt(std::max<double>(std::abs(k), 1.0)) / std::abs(static_cast<double>(l));
    const double tol = rel_tol * scale;

    std::vector<double> br = {sa, std::sqrt(w1.plateau_lo() * M), std::sqrt(w1.plateau_hi() * M), sb};
    double za = 0, zb = 0;  // stationary zone, empty when za >= zb
    const double s0d = static_cast<double>(s0);
    if (s0d > 0) {
        const double delta = std::sqrt(4.0 / (3.0 * std::abs(static_cast<double>(l)) * s0d));
        za = std::max(sa, s0d - delta);
        zb = std::min(sb, s0d + delta);
        if (za < zb) {
            br.push_back(za);
            br.push_back(zb);
            if (s0d > za && s0d < zb) br.push_back(s0d);
        }
        for (double g = 2 * delta; s0d + g < sb || s0d - g > sa; g *= 2) {
            if (s0d + g < sb && s0d + g > sa) br.push_back(s0d + g);
            if (s0d - g > sa && s0d - g < sb) br.push_back(s0d - g);
        }
    }
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());

    const int n = 20;
    static const GaussRule g48 = gauss_legendre(48);
    static const GaussRule g64 = gauss_legendre(64);
    CompensatedComplexSum total;
    double est = 0;
    int panels = 0;

    struct Panel {
        double a, b;
        cplx ea, eb;
        int depth;
    };
    std::vector<Panel> stack;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        const double a = br[i], b = br[i + 1];
        if (b <= a) continue;
        const bool zone = za < zb && a >= za && b <= zb;
        if (zone) {
            const cplx v64 = detail::gauss_panel(f, a, b, g64);
            const cplx v48 = detail::gauss_panel(f, a, b, g48);
            total += v64;
            est += std::abs(v64 - v48);
            ++panels;
            continue;
        }
        stack.push_back({a, b, e(f.phase_frac(a)), e(f.phase_frac(b)), 0});
        while (!stack.empty()) {
            const Panel p = stack.back();
            stack.pop_back();
            const double m = 0.5 * (p.a + p.b);
            const cplx em = e(f.phase_frac(m));
            const cplx whole = detail::levin_panel(f, p.a, p.b, p.ea, p.eb, n);
            const cplx left = detail::levin_panel(f, p.a, m, p.ea, em, n);
            const cplx right = detail::levin_panel(f, m, p.b, em, p.eb, n);
            const double diff = std::abs(whole - (left + right));
            if (diff <= tol || p.depth >= 40) {
                total += left + right;
                est += diff;
                panels += 2;
                if (panels > lemma1_max_panels)
                    fail(ErrorKind::budget, "osc_integral_numeric: more than " +
                                                std::to_string(lemma1_max_panels) + " panels");
                continue;
            }
            stack.push_back({m, p.b, em, p.eb, p.depth + 1});
            stack.push_back({p.a, m, p.ea, em, p.depth + 1});
        }
    }
    const cplx value = cubic_stationary_phase(k, l) * total.value();
    return {value, OscMethod::numeric_quadrature, est, true, panels};
}

/// Main term c e^{-sgn(l) pi i/4} sqrt|k|/|l| e(4k^3/27l^2) w1(4k^2/(9 M l^2)).
/// est_error carries c' |l|^{-3/2} M^{-5/4}.
inline OscIntegralResult osc_integral_asymptotic(i64 k, i64 l, double M, const PlateauBump& w1,
                                                 double c_prime) {
    require(l != 0 && k != 0, ErrorKind::invalid_argument, "osc_integral_asymptotic: k, l must be nonzero");
    require((k > 0) == (l > 0), ErrorKind::invalid_argument,
            "osc_integral_asymptotic: k and l must have the same sign");
    const double kd = static_cast<double>(k), ld = static_cast<double>(l);
    const double u0 = 4 * kd * kd / (9 * M * ld * ld);
    const double err = c_prime * std::pow(std::abs(ld), -1.5) * std::pow(M, -1.25);
    const bool inside = u0 > w1.support_lo() && u0 < w1.support_hi();
    if (!inside) return {cplx(0, 0), OscMethod::stationary_phase, err, false, 0};
    const cplx rot = l > 0 ? eighth_root_conj() : std::conj(eighth_root_conj());
    const cplx v = lemma1_c * rot * (std::sqrt(std::abs(kd)) / std::abs(ld)) * cubic_stationary_phase(k, l) * w1(u0);
    return {v, OscMethod::stationary_phase, err, true, 0};
}

// ---------------------------------------------------------------------------
// Fourier transforms
// ---------------------------------------------------------------------------

/// W1(y) = int_0^inf t^{1/2} w1(t^2) e(-y t) dt by adaptive Gauss-Legendre.
inline cplx w1_transform(double y, const PlateauBump& w1, const QuadratureSpec& q = default_quadrature()) {
    require(w1.support_lo() >= 0, ErrorKind::invalid_argument, "w1_transform: support must lie in [0, inf)");
    const std::array<double, 4> br = {std::sqrt(w1.support_lo()), std::sqrt(w1.plateau_lo()),
                                      std::sqrt(w1.plateau_hi()), std::sqrt(w1.support_hi())};
    const int min_panels = static_cast<int>(std::ceil(std::abs(y) * (br[3] - br[0]))) + 1;
    return integrate([&](double t) { return std::sqrt(t) * w1(t * t) * e(-y * t); }, br, q, min_panels).value;
}

/// f-hat(y) = int f(t) e(-y t) dt for f smooth with compact support in [a, b],
/// by the trapezoid rule with step h. For such f the error is the aliased
/// transform at |y| + 1/h, far below rounding here.
class TrapezoidTransform {
public:
    TrapezoidTransform() = default;
    template <typename F>
    TrapezoidTransform(F&& f, double a, double b, double inv_h) : a_(a), h_(1.0 / inv_h) {
        const auto n = static_cast<std::size_t>(std::ceil((b - a) * inv_h)) + 1;
        vals_.resize(n);
        for (std::size_t j = 0; j < n; ++j) vals_[j] = f(a + static_cast<double>(j) * h_) * h_;
    }

    cplx operator()(double y) const {
        cplx acc = 0;
        cplx z, step = e(-y * h_);
        for (std::size_t j = 0; j < vals_.size(); ++j) {
            if (j % 64 == 0) z = e(-y * (a_ + static_cast<double>(j) * h_));
            acc += vals_[j] * z;
            z *= step;
        }
        return acc;
    }

private:
    double a_ = 0, h_ = 1;
    std::vector<double> vals_;
};

/// Fast w-hat for a plateau bump.
inline TrapezoidTransform bump_transform(const PlateauBump& w, double inv_h = 1024) {
    return TrapezoidTransform([&](double t) { return w(t); }, w.support_lo(), w.support_hi(), inv_h);
}

/// Piecewise Chebyshev table for W1 on [0, y_max] (unit cells, degree 24);
/// W1(-y) = conj W1(y).
class W1Table {
public:
    static constexpr int degree = 24;

    W1Table(const PlateauBump& w1, double y_max) : y_max_(y_max) {
        require(y_max > 0 && y_max <= 5000, ErrorKind::invalid_argument, "W1Table: y_max outside (0, 5000]");
        require(w1.support_lo() >= 0, ErrorKind::invalid_argument, "W1Table: support must lie in [0, inf)");
        const double ta = std::sqrt(w1.support_lo()), tb = std::sqrt(w1.support_hi());
        const TrapezoidTransform tr([&](double t) { return std::sqrt(t) * w1(t * t); }, ta, tb,
                                    std::max(4096.0, 4 * y_max));
        cells_ = static_cast<int>(std::ceil(y_max));
        coef_.resize(static_cast<std::size_t>(cells_) * (degree + 1));
        const int n = degree + 1;
        std::vector<cplx> vals(n);
        for (int c = 0; c < cells_; ++c) {
            for (int j = 0; j < n; ++j) {
                const double x = std::cos(std::numbers::pi * (j + 0.5) / n);
                vals[j] = tr(c + 0.5 + 0.5 * x);
            }
            for (int k = 0; k < n; ++k) {
                cplx s = 0;
                for (int j = 0; j < n; ++j) s += vals[j] * std::cos(std::numbers::pi * k * (j + 0.5) / n);
                coef_[static_cast<std::size_t>(c) * n + k] = s * (k == 0 ? 1.0 / n : 2.0 / n);
            }
        }
    }

    double y_max() const { return y_max_; }

    cplx operator()(double y) const {
        const bool neg = y < 0;
        const double ay = std::abs(y);
        if (ay > y_max_) fail(ErrorKind::out_of_range, "W1Table: |y| beyond table range");
        int c = static_cast<int>(ay);
        if (c >= cells_) c = cells_ - 1;
        const double x = 2 * (ay - c) - 1;
        const cplx* a = &coef_[static_cast<std::size_t>(c) * (degree + 1)];
        cplx b1 = 0, b2 = 0;
        for (int k = degree; k >= 1; --k) {
            const cplx b0 = 2 * x * b1 - b2 + a[k];
            b2 = b1;
            b1 = b0;
        }
        const cplx v = x * b1 - b2 + a[0];
        return neg ? std::conj(v) : v;
    }

private:
    double y_max_;
    int cells_ = 0;
    std::vector<cplx> coef_;
};

} // namespace mordell
