#include "pseudoexit/hermite.hpp"

#include <algorithm>
#include <cctype>

namespace pseudoexit {

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

Rational parse_rational(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        return Rational(num, den);
    }

    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');

    BigInt mantissa = 0;
    long fracDigits = 0, exponent = 0;
    bool sawDigit = false, sawDot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa = mantissa * 10 + (c - '0');
            if (sawDot) ++fracDigits;
            sawDigit = true;
        } else if (c == '.' && !sawDot) {
            sawDot = true;
        } else if ((c == 'e' || c == 'E') && sawDigit) {
            exponent = std::stol(s.substr(i + 1));
            break;
        } else {
            throw std::invalid_argument("cannot parse rational '" + text + "'");
        }
    }
    if (!sawDigit) throw std::invalid_argument("cannot parse rational '" + text + "'");

    Rational r(mantissa, 1);
    long shift = exponent - fracDigits;
    BigInt pow10 = 1;
    for (long j = 0; j < std::abs(shift); ++j) pow10 *= 10;
    if (shift >= 0)
        r *= Rational(pow10, 1);
    else
        r /= Rational(pow10, 1);
    return neg ? -r : r;
}

std::string to_string(const Rational& r) { return r.str(); }

double to_double(const Rational& r) { return r.convert_to<double>(); }

RationalPoly RationalPoly::operator+(const RationalPoly& o) const {
    std::vector<Rational> out(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
    return RationalPoly(std::move(out));
}

RationalPoly RationalPoly::operator-(const RationalPoly& o) const {
    std::vector<Rational> out(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] -= o.c_[i];
    return RationalPoly(std::move(out));
}

RationalPoly RationalPoly::operator*(const RationalPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> out(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
    return RationalPoly(std::move(out));
}

RationalPoly RationalPoly::operator*(const Rational& s) const {
    if (s == 0) return {};
    std::vector<Rational> out = c_;
    for (auto& v : out) v *= s;
    return RationalPoly(std::move(out));
}

RationalPoly RationalPoly::pow(int e) const {
    RationalPoly r = constant(1);
    for (int i = 0; i < e; ++i) r = r * (*this);
    return r;
}

RationalPoly RationalPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * Rational(long(i));
    return RationalPoly(std::move(out));
}

Rational RationalPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double RationalPoly::eval(double x) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

PolyDivMod RationalPoly::divmod(const RationalPoly& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("polynomial division by zero");
    std::vector<Rational> rem = c_;
    int dd = divisor.degree();
    const Rational& lead = divisor.c_.back();
    std::vector<Rational> quot;
    if (int(rem.size()) - 1 >= dd) quot.assign(rem.size() - std::size_t(dd), Rational(0));
    for (int i = int(rem.size()) - 1; i >= dd; --i) {
        Rational f = rem[std::size_t(i)] / lead;
        if (f == 0) continue;
        quot[std::size_t(i - dd)] = f;
        for (int j = 0; j <= dd; ++j) rem[std::size_t(i - dd + j)] -= f * divisor.c_[std::size_t(j)];
    }
    if (int(rem.size()) > dd) rem.resize(std::size_t(dd > 0 ? dd : 0));
    return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

HermiteBasis build_hermite_basis(int N, const Rational& a, const Rational& b) {
    if (N < 1) throw std::invalid_argument("build_hermite_basis: N must be >= 1");
    if (!(a < b)) throw std::invalid_argument("build_hermite_basis: requires a < b");

    HermiteBasis basis;
    basis.N = N;
    basis.a = a;
    basis.b = b;

    const Rational L = b - a;
    const RationalPoly u = RationalPoly::linear(a);   // x - a
    const RationalPoly v = RationalPoly::linear(b) * Rational(-1);  // b - x

    for (int k = 0; k < N; ++k) {
        // H_k^-(x) = ((b-x)/L)^N (x-a)^k / k! * sum_l C(l+N-1, l) ((x-a)/L)^l
        RationalPoly sum_m, sum_p;
        Rational Lpow = 1;
        for (int l = 0; l <= N - k - 1; ++l) {
            Rational coeff = Rational(binomial(l + N - 1, l)) / Lpow;
            sum_m = sum_m + u.pow(l) * coeff;
            sum_p = sum_p + v.pow(l) * coeff;
            Lpow *= L;
        }
        Rational scale = Rational(1) / Rational(factorial(k));
        Rational LN = 1;
        for (int i = 0; i < N; ++i) LN *= L;
        basis.h_minus.push_back(v.pow(N) * u.pow(k) * sum_m * (scale / LN));
        // H_k^+ mirrors with (x-b)^k = (-1)^k (b-x)^k
        Rational sgn = (k % 2 == 0) ? Rational(1) : Rational(-1);
        basis.h_plus.push_back(u.pow(N) * v.pow(k) * sum_p * (sgn * scale / LN));
    }
    return basis;
}

ExitLocationLaw exit_location_law(const HermiteBasis& basis, const Rational& x) {
    if (x < basis.a || x > basis.b)
        throw std::invalid_argument("exit_location_law: x must lie in [a, b]");
    ExitLocationLaw law;
    for (const auto& h : basis.h_minus) law.weights_a.push_back(h.eval(x));
    for (const auto& h : basis.h_plus) law.weights_b.push_back(h.eval(x));
    return law;
}

std::pair<Rational, Rational> ruin_probabilities(const HermiteBasis& basis, const Rational& x) {
    if (x < basis.a || x > basis.b)
        throw std::invalid_argument("ruin_probabilities: x must lie in [a, b]");
    return {basis.h_minus[0].eval(x), basis.h_plus[0].eval(x)};
}

RationalPoly boundary_annihilator(const HermiteBasis& basis) {
    return RationalPoly::linear(basis.a).pow(basis.N) * RationalPoly::linear(basis.b).pow(basis.N);
}

Rational expected_exit_polynomial(const HermiteBasis& basis, const RationalPoly& p,
                                  const Rational& x) {
    return p.divmod(boundary_annihilator(basis)).remainder.eval(x);
}

std::vector<Rational> moment_quotient_coefficients(int N, const Rational& a, const Rational& b,
                                                   int p) {
    std::vector<Rational> c(std::size_t(p) + 1, Rational(0));
    for (int n = 0; n <= p; ++n) {
        Rational acc = 0;
        Rational apow = 1;
        for (int k = 0; k <= n; ++k) {
            Rational bpow = 1;
            for (int j = 0; j < n - k; ++j) bpow *= b;
            acc += Rational(binomial(N + k - 1, k) * binomial(N + n - 1 - k, n - k)) * apow * bpow;
            apow *= a;
        }
        c[std::size_t(n)] = acc;
    }
    return c;
}

Rational overshoot_moment(const HermiteBasis& basis, int p, const Rational& x) {
    if (p < 0) throw std::invalid_argument("overshoot_moment: p must be >= 0");
    RationalPoly phi = RationalPoly::linear(basis.b).pow(p);  // (x - b)^p
    RationalPoly rem = phi.divmod(boundary_annihilator(basis)).remainder;
    Rational acc = 0;
    for (int k = 0; k < basis.N; ++k) {
        acc += basis.h_plus[std::size_t(k)].eval(x) * rem.eval(basis.b);
        rem = rem.derivative();
    }
    return acc;
}

Rational ruin_lower_binomial(int N, const Rational& a, const Rational& b, const Rational& x) {
    Rational sum = 0;
    for (int m = 0; m <= N - 1; ++m) {
        Rational t = Rational(binomial(2 * N - 1, m));
        for (int i = 0; i < m; ++i) t *= (x - a);
        for (int i = 0; i < N - 1 - m; ++i) t *= (b - x);
        sum += t;
    }
    Rational pref = 1;
    for (int i = 0; i < N; ++i) pref *= (b - x);
    Rational Lpow = 1;
    for (int i = 0; i < 2 * N - 1; ++i) Lpow *= (b - a);
    return pref * sum / Lpow;
}

}  // namespace pseudoexit
