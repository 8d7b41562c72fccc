#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pseudoexit/hermite.hpp"

using namespace pseudoexit;

namespace {

RationalPoly monomial(int p) {
    std::vector<Rational> c(std::size_t(p) + 1, Rational(0));
    c.back() = 1;
    return RationalPoly(std::move(c));
}

RationalPoly random_poly(std::mt19937& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 7);
    std::vector<Rational> c(std::size_t(deg(rng)) + 1);
    for (auto& v : c) v = Rational(num(rng), den(rng));
    return RationalPoly(std::move(c));
}

}  // namespace

TEST_CASE("rational parsing") {
    CHECK(parse_rational("1/3") == Rational(1, 3));
    CHECK(parse_rational("-7/2") == Rational(-7, 2));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-1.5e-2") == Rational(-3, 200));
    CHECK(parse_rational("42") == Rational(42));
    CHECK(parse_rational(" 2 / 6 ") == Rational(1, 3));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("polynomial Euclidean division is exact") {
    std::mt19937 rng(424242);
    for (int rep = 0; rep < 60; ++rep) {
        RationalPoly p = random_poly(rng, 9);
        RationalPoly d = random_poly(rng, 4);
        if (d.is_zero()) continue;
        auto dm = p.divmod(d);
        CHECK(dm.quotient * d + dm.remainder == p);
        CHECK(dm.remainder.degree() < d.degree());
    }
    CHECK_THROWS_AS(monomial(3).divmod(RationalPoly{}), std::invalid_argument);
}

TEST_CASE("closed-form families at N=2 and N=1") {
    // N = 2: H_1^-(x) = (x-a)(x-b)^2/(b-a)^2, H_0^-(x) = (x-b)^2 (2x-3a+b)/(b-a)^3
    Rational a(-1, 2), b(5, 3);
    auto basis = build_hermite_basis(2, a, b);
    Rational L = b - a;
    RationalPoly xa = RationalPoly::linear(a);
    RationalPoly xb = RationalPoly::linear(b);
    RationalPoly want_h1m = xa * xb * xb * (Rational(1) / (L * L));
    CHECK(basis.h_minus[1] == want_h1m);
    RationalPoly two_x = RationalPoly({-3 * a + b, Rational(2)});
    RationalPoly want_h0m = xb * xb * two_x * (Rational(1) / (L * L * L));
    CHECK(basis.h_minus[0] == want_h0m);
    // mirrored family
    RationalPoly want_h1p = xa * xa * xb * (Rational(1) / (L * L));
    CHECK(basis.h_plus[1] == want_h1p);

    auto lin = build_hermite_basis(1, Rational(0), Rational(1));
    CHECK(lin.h_minus[0] == RationalPoly({Rational(1), Rational(-1)}));  // 1 - x
    CHECK(lin.h_plus[0] == RationalPoly({Rational(0), Rational(1)}));    // x
}

TEST_CASE("interpolation conditions, degree bound, and the unit identity") {
    Rational a(-2, 3), b(7, 5);
    for (int N = 1; N <= 8; ++N) {
        auto basis = build_hermite_basis(N, a, b);
        CHECK(basis.h_minus[0] + basis.h_plus[0] == RationalPoly::constant(1));
        for (int k = 0; k < N; ++k) {
            CHECK(basis.h_minus[std::size_t(k)].degree() <= 2 * N - 1);
            RationalPoly hm = basis.h_minus[std::size_t(k)];
            RationalPoly hp = basis.h_plus[std::size_t(k)];
            for (int l = 0; l < N; ++l) {
                Rational want = (l == k) ? 1 : 0;
                CHECK(hm.eval(a) == want);
                CHECK(hm.eval(b) == 0);
                CHECK(hp.eval(b) == want);
                CHECK(hp.eval(a) == 0);
                hm = hm.derivative();
                hp = hp.derivative();
            }
        }
    }
}

TEST_CASE("wide-interval limit of the coefficients") {
    // H_k^-(x) -> (x-a)^k / k! and H_k^+(x) -> 0 as b grows
    const Rational a(0), x(1, 2);
    const int N = 3;
    for (long bv : {10, 100, 1000}) {
        auto basis = build_hermite_basis(N, a, Rational(bv));
        for (int k = 0; k < N; ++k) {
            Rational want = Rational(1, factorial(k));
            for (int i = 0; i < k; ++i) want *= x;
            Rational err = basis.h_minus[std::size_t(k)].eval(x) - want;
            if (err < 0) err = -err;
            CHECK(to_double(err) < (k == 0 ? 1.0 : 2.0) / double(bv));
            Rational tail = basis.h_plus[std::size_t(k)].eval(x);
            if (tail < 0) tail = -tail;
            CHECK(to_double(tail) < 1.0 / double(bv));
        }
    }
}

TEST_CASE("exit location law") {
    Rational a(0), b(1);
    auto basis = build_hermite_basis(3, a, b);
    auto at_a = exit_location_law(basis, a);
    CHECK(at_a.weights_a[0] == 1);
    CHECK(at_a.weights_a[1] == 0);
    CHECK(at_a.weights_b[0] == 0);

    // N = 2 midpoint: [1/2, (b-a)/8] and [1/2, -(b-a)/8]
    auto b2 = build_hermite_basis(2, Rational(-1), Rational(3));
    auto mid = exit_location_law(b2, Rational(1));
    CHECK(mid.weights_a[0] == Rational(1, 2));
    CHECK(mid.weights_a[1] == Rational(1, 2));   // (b-a)/8 = 4/8
    CHECK(mid.weights_b[0] == Rational(1, 2));
    CHECK(mid.weights_b[1] == Rational(-1, 2));
    CHECK(mid.weights_a[0] + mid.weights_b[0] == 1);
}

TEST_CASE("ruin pseudo-probabilities: midpoint, endpoint, and the dual route") {
    auto b2 = build_hermite_basis(2, Rational(0), Rational(1));
    auto [lo, hi] = ruin_probabilities(b2, Rational(1, 2));
    CHECK(lo == Rational(1, 2));
    CHECK(hi == Rational(1, 2));

    auto at_b = ruin_probabilities(b2, Rational(1));
    CHECK(at_b.first == 0);
    CHECK(at_b.second == 1);

    // two independent formula routes agree exactly
    for (int N : {2, 3, 5}) {
        auto basis = build_hermite_basis(N, Rational(0), Rational(1));
        for (const Rational& x : {Rational(1, 3), Rational(4, 7), Rational(9, 10)}) {
            auto [plo, phi] = ruin_probabilities(basis, x);
            CHECK(plo == ruin_lower_binomial(N, Rational(0), Rational(1), x));
            CHECK(plo + phi == 1);
        }
    }
}

TEST_CASE("pseudo-moments by Euclidean remainder") {
    Rational a(-1, 3), b(3, 2), x(1, 4);
    for (int N : {1, 2, 3}) {
        auto basis = build_hermite_basis(N, a, b);
        for (int p = 0; p <= 2 * N - 1; ++p) {
            Rational want = 1;
            for (int i = 0; i < p; ++i) want *= x;
            CHECK(expected_exit_polynomial(basis, monomial(p), x) == want);
        }
        // first display beyond the reproduced degrees
        Rational xn = 1;
        for (int i = 0; i < 2 * N; ++i) xn *= x;
        Rational ann = boundary_annihilator(basis).eval(x);
        CHECK(expected_exit_polynomial(basis, monomial(2 * N), x) == xn - ann);
        // linearity through an arbitrary polynomial
        std::mt19937 rng(7);
        RationalPoly p = random_poly(rng, 2 * N + 3);
        auto dm = p.divmod(boundary_annihilator(basis));
        CHECK(expected_exit_polynomial(basis, p, x) == dm.remainder.eval(x));
    }
}

TEST_CASE("Hermite reproduction property") {
    // E_x[H_k^side(X_tau)] = H_k^side(x), and every polynomial of degree
    // <= 2N-1 reproduces itself
    Rational a(0), b(2), x(3, 4);
    for (int N : {2, 4}) {
        auto basis = build_hermite_basis(N, a, b);
        for (int k = 0; k < N; ++k) {
            CHECK(expected_exit_polynomial(basis, basis.h_minus[std::size_t(k)], x) ==
                  basis.h_minus[std::size_t(k)].eval(x));
            CHECK(expected_exit_polynomial(basis, basis.h_plus[std::size_t(k)], x) ==
                  basis.h_plus[std::size_t(k)].eval(x));
        }
        std::mt19937 rng(11);
        for (int rep = 0; rep < 10; ++rep) {
            RationalPoly p = random_poly(rng, 2 * N - 1);
            CHECK(expected_exit_polynomial(basis, p, x) == p.eval(x));
        }
    }
}

TEST_CASE("quotient coefficients c_n") {
    Rational a(-1, 2), b(4, 3);
    for (int N : {1, 2, 3}) {
        auto c = moment_quotient_coefficients(N, a, b, 2);
        CHECK(c[0] == 1);
        CHECK(c[1] == Rational(N) * (a + b));
        CHECK(c[2] == Rational(N * (N + 1), 2) * (a * a + b * b) + Rational(N * N) * a * b);
    }
    // against the Euclidean quotient of x^(2N+p)
    auto basis = build_hermite_basis(2, Rational(0), Rational(1));
    auto quot = monomial(4 + 3).divmod(boundary_annihilator(basis)).quotient;
    auto c = moment_quotient_coefficients(2, Rational(0), Rational(1), 3);
    for (int n = 0; n <= 3; ++n) CHECK(quot.coefficient(n) == c[std::size_t(3 - n)]);
}

TEST_CASE("overshoot moments") {
    Rational a(-1), b(2), x(1, 2);
    for (int N : {2, 3}) {
        auto basis = build_hermite_basis(N, a, b);
        CHECK(overshoot_moment(basis, 0, x) == basis.h_plus[0].eval(x));
        for (int p = 1; p < N; ++p) {
            Rational want = Rational(factorial(p)) * basis.h_plus[std::size_t(p)].eval(x);
            CHECK(overshoot_moment(basis, p, x) == want);
        }
        // p = N goes through the division route and comes out at zero, as does
        // everything above it
        for (int p = N; p <= 2 * N + 2; ++p) CHECK(overshoot_moment(basis, p, x) == 0);
    }
    // N = 2, p = 1: 1! H_1^+(x) = (x-a)^2 (x-b)/(b-a)^2
    auto b2 = build_hermite_basis(2, a, b);
    Rational want = (x - a) * (x - a) * (x - b) / ((b - a) * (b - a));
    CHECK(overshoot_moment(b2, 1, x) == want);
}

TEST_CASE("basis construction validates its domain") {
    CHECK_THROWS_AS(build_hermite_basis(0, Rational(0), Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(build_hermite_basis(2, Rational(1), Rational(1)), std::invalid_argument);
    auto basis = build_hermite_basis(2, Rational(0), Rational(1));
    CHECK_THROWS_AS(ruin_probabilities(basis, Rational(2)), std::invalid_argument);
    CHECK_THROWS_AS(exit_location_law(basis, Rational(-1)), std::invalid_argument);
}
