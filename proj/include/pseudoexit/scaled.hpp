#pragma once

#include <cmath>
#include <complex>

#include "pseudoexit/complexmp.hpp"

namespace pseudoexit {

// Complex value stored as mantissa * exp(log_scale), with |mantissa| kept in
// [1, 2). Zero is canonically (0, 0). Keeps determinants built from entries of
// magnitude exp(+-lambda^(1/2N) z) finite far beyond the double range.
template <class C>
struct Scaled {
    using real_type = typename C::value_type;

    C mantissa{};
    real_type log_scale{};

    bool is_zero() const {
        using std::abs;
        return real(mantissa) == 0 && imag(mantissa) == 0;
    }

    // mantissa * exp(log_scale); overflows to inf / underflows to 0 when the
    // represented value leaves the target range.
    C value() const {
        using std::exp;
        if (is_zero()) return C{};
        return mantissa * exp(log_scale);
    }

    real_type log_abs() const {
        using std::abs;
        using std::log;
        return log(abs(mantissa)) + log_scale;
    }
};

template <class C>
Scaled<C> normalized(const C& v, typename C::value_type log_offset = {}) {
    using std::abs;
    using std::exp;
    using std::floor;
    using std::log;
    using R = typename C::value_type;
    if (real(v) == 0 && imag(v) == 0) return {};
    static const R ln2 = log(R(2));
    R shift = floor(log(abs(v)) / ln2) * ln2;
    return {v * exp(-shift), log_offset + shift};
}

template <class C>
Scaled<C> renormalized(const Scaled<C>& s) {
    if (s.is_zero()) return {};
    return normalized(s.mantissa, s.log_scale);
}

template <class C>
Scaled<C> operator*(const Scaled<C>& a, const Scaled<C>& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return normalized(a.mantissa * b.mantissa, a.log_scale + b.log_scale);
}

template <class C>
Scaled<C> operator*(const Scaled<C>& a, const C& c) {
    return a * normalized(c);
}

template <class C>
Scaled<C> operator/(const Scaled<C>& a, const Scaled<C>& b) {
    if (a.is_zero()) return {};
    return normalized(a.mantissa / b.mantissa, a.log_scale - b.log_scale);
}

template <class C>
Scaled<C> operator-(Scaled<C> a) {
    a.mantissa = -a.mantissa;
    return a;
}

template <class C>
Scaled<C> operator+(const Scaled<C>& a, const Scaled<C>& b) {
    using std::exp;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const Scaled<C>& hi = (a.log_scale >= b.log_scale) ? a : b;
    const Scaled<C>& lo = (a.log_scale >= b.log_scale) ? b : a;
    // exp() underflows harmlessly when the scales are far apart
    C m = hi.mantissa + lo.mantissa * exp(lo.log_scale - hi.log_scale);
    return normalized(m, hi.log_scale);
}

template <class C>
Scaled<C> operator-(const Scaled<C>& a, const Scaled<C>& b) {
    return a + (-b);
}

using ScaledComplex = Scaled<std::complex<double>>;

}  // namespace pseudoexit
