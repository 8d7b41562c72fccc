#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pseudoexit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(int n, int k);
BigInt factorial(int n);

// Accepts "p/q", integers, and plain decimals ("0.25", "-1.5e-2"), all parsed
// exactly.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);
double to_double(const Rational& r);

struct PolyDivMod;

// Univariate polynomial with exact rational coefficients, ascending degree.
// The zero polynomial has an empty coefficient vector.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static RationalPoly constant(const Rational& v) { return RationalPoly({v}); }
    // x - root
    static RationalPoly linear(const Rational& root) { return RationalPoly({-root, Rational(1)}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }  // -1 for the zero polynomial
    const std::vector<Rational>& coefficients() const { return c_; }
    Rational coefficient(int k) const {
        return (k >= 0 && k < int(c_.size())) ? c_[std::size_t(k)] : Rational(0);
    }

    RationalPoly operator+(const RationalPoly& o) const;
    RationalPoly operator-(const RationalPoly& o) const;
    RationalPoly operator*(const RationalPoly& o) const;
    RationalPoly operator*(const Rational& s) const;
    bool operator==(const RationalPoly& o) const { return c_ == o.c_; }

    RationalPoly pow(int e) const;
    RationalPoly derivative() const;
    Rational eval(const Rational& x) const;
    double eval(double x) const;

    // Exact Euclidean division: *this = q * divisor + r with deg r < deg divisor.
    PolyDivMod divmod(const RationalPoly& divisor) const;

private:
    std::vector<Rational> c_;
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

struct PolyDivMod {
    RationalPoly quotient, remainder;
};

}  // namespace pseudoexit
