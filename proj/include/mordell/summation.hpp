#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>

namespace mordell {

using cplx = std::complex<double>;

/// Neumaier's variant of Kahan summation. Order-dependent, so callers that
/// need bit-reproducible results must feed terms in a fixed order.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) { add(x); return *this; }
    CompensatedSum& operator+=(const CompensatedSum& o) {
        add(o.sum_);
        add(o.comp_);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(cplx z) { re_.add(z.real()); im_.add(z.imag()); }
    CompensatedComplexSum& operator+=(cplx z) { add(z); return *this; }
    CompensatedComplexSum& operator+=(const CompensatedComplexSum& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// e(t) = exp(2 pi i t).
inline cplx e(double t) {
    const double a = two_pi * t;
    return {std::cos(a), std::sin(a)};
}

/// e(num/den), den > 0. num is reduced into [0, den) exactly first.
template <typename Int>
inline cplx e_frac(Int num, Int den) {
    static_assert(std::is_integral_v<Int> || std::is_same_v<Int, __int128>);
    num %= den;
    if (num < 0) num += den;
    return e(static_cast<double>(num) / static_cast<double>(den));
}

} // namespace mordell
