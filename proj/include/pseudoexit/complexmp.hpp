#pragma once

#include <cmath>
#include <complex>

#include <boost/math/constants/constants.hpp>

#include "pseudoexit/bigfloat.hpp"

namespace pseudoexit {

// Minimal complex type over a multiprecision real. std::complex is only
// specified for builtin floating types, so the extended-precision code path
// uses this instead; it provides exactly the operations the determinant
// engine and the inversion contours need.
template <class R>
struct MpComplex {
    using value_type = R;
    R re{}, im{};

    MpComplex() = default;
    MpComplex(const R& r) : re(r) {}  // NOLINT(google-explicit-constructor)
    MpComplex(const R& r, const R& i) : re(r), im(i) {}

    MpComplex& operator+=(const MpComplex& o) { re += o.re; im += o.im; return *this; }
    MpComplex& operator-=(const MpComplex& o) { re -= o.re; im -= o.im; return *this; }
    MpComplex& operator*=(const MpComplex& o) {
        R r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
};

template <class R> MpComplex<R> operator+(MpComplex<R> a, const MpComplex<R>& b) { return a += b; }
template <class R> MpComplex<R> operator-(MpComplex<R> a, const MpComplex<R>& b) { return a -= b; }
template <class R> MpComplex<R> operator-(const MpComplex<R>& a) { return {-a.re, -a.im}; }
template <class R> MpComplex<R> operator*(MpComplex<R> a, const MpComplex<R>& b) { return a *= b; }
template <class R> MpComplex<R> operator*(const R& s, MpComplex<R> a) { a.re *= s; a.im *= s; return a; }
template <class R> MpComplex<R> operator*(MpComplex<R> a, const R& s) { a.re *= s; a.im *= s; return a; }
template <class R> MpComplex<R> operator/(MpComplex<R> a, const R& s) { a.re /= s; a.im /= s; return a; }

template <class R>
MpComplex<R> operator/(const MpComplex<R>& a, const MpComplex<R>& b) {
    R d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

template <class R> R real(const MpComplex<R>& z) { return z.re; }
template <class R> R imag(const MpComplex<R>& z) { return z.im; }
template <class R> MpComplex<R> conj(const MpComplex<R>& z) { return {z.re, -z.im}; }
template <class R> R norm(const MpComplex<R>& z) { return z.re * z.re + z.im * z.im; }
template <class R> R abs(const MpComplex<R>& z) { return sqrt(norm(z)); }
template <class R> R arg(const MpComplex<R>& z) { return atan2(z.im, z.re); }

template <class R>
MpComplex<R> exp(const MpComplex<R>& z) {
    R m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

template <class R>
MpComplex<R> log(const MpComplex<R>& z) {
    return {log(abs(z)), arg(z)};
}

template <class R>
MpComplex<R> polar_unit(const R& angle) {
    return {cos(angle), sin(angle)};
}

inline std::complex<double> polar_unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Principal branch z^p, argument taken in (-pi, pi].
template <class R>
MpComplex<R> pow(const MpComplex<R>& z, const R& p) {
    if (z.re == 0 && z.im == 0) return {};
    return exp(MpComplex<R>(p) * log(z));
}

// Maps a real scalar type to its complex companion: std::complex for double,
// MpComplex otherwise.
template <class R> struct complex_of { using type = MpComplex<R>; };
template <> struct complex_of<double> { using type = std::complex<double>; };
template <class R> using complex_of_t = typename complex_of<R>::type;

template <class R>
R pi_value() { return boost::math::constants::pi<R>(); }

template <class R>
MpComplex<R> to_precision(const std::complex<double>& z) { return {R(z.real()), R(z.imag())}; }

inline double to_double(double x) { return x; }
inline double to_double(const BigFloat& x) { return x.convert_to<double>(); }
inline std::complex<double> to_std_complex(const std::complex<double>& z) { return z; }
inline std::complex<double> to_std_complex(const MpComplex<BigFloat>& z) {
    return {to_double(z.re), to_double(z.im)};
}

}  // namespace pseudoexit
