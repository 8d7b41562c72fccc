#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <random>

#include "pseudoexit/laplace.hpp"
#include "pseudoexit/matrix.hpp"
#include "pseudoexit/process.hpp"

using namespace pseudoexit;

namespace {

// cofactor expansion, exponential cost; the independent determinant oracle
std::complex<double> det_cofactor(const ComplexMatrix& m) {
    if (m.n == 1) return m.at(0, 0);
    std::complex<double> acc = 0.0;
    double sign = 1.0;
    for (int c = 0; c < m.n; ++c) {
        ComplexMatrix minor(m.n - 1);
        for (int r = 1; r < m.n; ++r) {
            int cc = 0;
            for (int j = 0; j < m.n; ++j) {
                if (j == c) continue;
                minor.at(r - 1, cc++) = m.at(r, j);
            }
        }
        acc += sign * m.at(0, c) * det_cofactor(minor);
        sign = -sign;
    }
    return acc;
}

}  // namespace

TEST_CASE("process params validation") {
    CHECK_THROWS_AS(ProcessParams(0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ProcessParams(2, 1.0, 1.0), std::invalid_argument);
    CHECK(ProcessParams(3, -1.0, 2.0).kappa() == 1);
    CHECK(ProcessParams(2, -1.0, 2.0).kappa() == -1);
    CHECK(ProcessParams(1, 0.0, 1.0).kappa() == 1);
}

TEST_CASE("root system invariants for N = 1..8") {
    for (int N = 1; N <= 8; ++N) {
        ProcessParams params(N, 0.0, 1.0);
        RootSystem rs = compute_roots(params);
        REQUIRE(int(rs.roots.size()) == 2 * N);
        std::complex<double> sum = 0.0;
        for (int l = 1; l <= 2 * N; ++l) {
            auto th = rs.theta(l);
            CHECK(std::abs(std::abs(th) - 1.0) < 1e-15);
            CHECK(std::abs(std::pow(th, 2 * N) - double(params.kappa())) < 1e-13);
            if (l <= N)
                CHECK(th.real() < 0.0);
            else
                CHECK(th.real() > 0.0);
            sum += th;
        }
        CHECK(std::abs(sum) < 1e-14);
        for (int l = 1; l <= N; ++l)
            CHECK(std::abs(rs.theta(N + l) + rs.theta(l)) < 1e-14);
    }
}

TEST_CASE("roots match the N=2 quadrant values") {
    auto rs = compute_roots(ProcessParams(2, 0.0, 1.0));
    CHECK(std::abs(rs.theta(1) - std::polar(1.0, 3 * M_PI / 4)) < 1e-15);
    CHECK(std::abs(rs.theta(2) - std::polar(1.0, 5 * M_PI / 4)) < 1e-15);
    CHECK(std::abs(rs.theta(3) - std::polar(1.0, 7 * M_PI / 4)) < 1e-15);
    CHECK(std::abs(rs.theta(4) - std::polar(1.0, M_PI / 4)) < 1e-15);

    auto rs1 = compute_roots(ProcessParams(1, 0.0, 1.0));
    CHECK(std::abs(rs1.theta(1) - std::complex<double>(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(rs1.theta(2) - std::complex<double>(1.0, 0.0)) < 1e-15);
}

TEST_CASE("exp_lambda") {
    auto one = exp_lambda(0.0, 3, std::polar(1.0, 1.0), 5.0);
    CHECK(std::abs(one.value() - 1.0) < 1e-15);

    auto en3 = exp_lambda(1.0, 1, {-1.0, 0.0}, 3.0);
    CHECK(en3.value().real() == doctest::Approx(std::exp(-3.0)).epsilon(1e-14));

    // lambda = 16, N = 2: lambda^(1/4) = 2, theta = e^{i pi/4}, z = 1
    auto v = exp_lambda(16.0, 2, std::polar(1.0, M_PI / 4), 1.0);
    std::complex<double> want = std::exp(std::complex<double>(std::sqrt(2.0), std::sqrt(2.0)));
    CHECK(std::abs(v.value() - want) < 1e-13 * std::abs(want));

    CHECK_THROWS_AS(exp_lambda(-1.0, 2, {1.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("scaled complex representation") {
    ScaledComplex z = normalized(std::complex<double>(0.0));
    CHECK(z.is_zero());
    CHECK(z.log_scale == 0.0);

    ScaledComplex v = normalized(std::complex<double>(-123.5, 41.0));
    CHECK(std::abs(v.mantissa) >= 1.0);
    CHECK(std::abs(v.mantissa) < 2.0);
    CHECK(std::abs(v.value() - std::complex<double>(-123.5, 41.0)) < 1e-12);

    // renormalization is idempotent
    ScaledComplex w = renormalized(v);
    CHECK(w.mantissa == v.mantissa);
    CHECK(w.log_scale == v.log_scale);

    // huge/tiny scales survive arithmetic
    ScaledComplex big{std::complex<double>(1.0, 0.0), 400.0};
    ScaledComplex tiny{std::complex<double>(1.0, 0.0), -400.0};
    CHECK(std::abs((big * tiny).value() - 1.0) < 1e-14);
    CHECK((big + tiny).log_abs() == doctest::Approx(400.0));
}

TEST_CASE("det_scaled exact small cases") {
    ComplexMatrix id(4);
    for (int i = 0; i < 4; ++i) id.at(i, i) = 1.0;
    auto d = det_scaled(id);
    CHECK(std::abs(d.value() - 1.0) < 1e-15);

    // diag(e^400, e^-400): value 1 even though entries overflow when multiplied
    ComplexMatrix diag(2);
    diag.at(0, 0) = std::exp(400.0 - 400.0) * 1.0;  // assembled in scaled space below
    ScaledMatrix<std::complex<double>> s(2);
    s.set_row(0, {ScaledComplex{{1.0, 0.0}, 400.0}, ScaledComplex{}});
    s.set_row(1, {ScaledComplex{}, ScaledComplex{{1.0, 0.0}, -400.0}});
    auto ds = det_scaled(std::move(s));
    CHECK(std::abs(ds.value() - 1.0) < 1e-14);
    CHECK(ds.log_abs() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("det_scaled matches the cofactor oracle on random matrices") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int n = 2; n <= 6; ++n) {
        for (int rep = 0; rep < 30; ++rep) {
            ComplexMatrix m(n);
            for (auto& e : m.entries) e = {uni(rng), uni(rng)};
            auto fast = det_scaled(m).value();
            auto slow = det_cofactor(m);
            CHECK(std::abs(fast - slow) < 1e-10 * std::max(std::abs(slow), 1e-8));
        }
    }
}

TEST_CASE("det_scaled rejects non-finite input and reports singularity as zero") {
    ComplexMatrix bad(2);
    bad.at(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(det_scaled(bad), std::invalid_argument);

    ComplexMatrix sing(3);
    for (int c = 0; c < 3; ++c) {
        sing.at(0, c) = {1.0, 1.0};
        sing.at(1, c) = {2.0, 2.0};  // row 1 = 2 * row 0
        sing.at(2, c) = {double(c), 0.0};
    }
    sing.at(2, 2) = {5.0, -1.0};
    CHECK(det_scaled(sing).is_zero());
}

TEST_CASE("solve_linear recovers a known solution") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    ComplexMatrix m(5);
    for (auto& e : m.entries) e = {uni(rng), uni(rng)};
    std::vector<std::complex<double>> want(5);
    for (auto& v : want) v = {uni(rng), uni(rng)};
    std::vector<std::complex<double>> rhs(5);
    for (int r = 0; r < 5; ++r) {
        std::complex<double> acc = 0.0;
        for (int c = 0; c < 5; ++c) acc += m.at(r, c) * want[std::size_t(c)];
        rhs[std::size_t(r)] = acc;
    }
    auto got = solve_linear(m, rhs);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(got[std::size_t(i)] - want[std::size_t(i)]) < 1e-12);
}

TEST_CASE("scaled arithmetic tracks plain complex arithmetic") {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    for (int rep = 0; rep < 200; ++rep) {
        std::complex<double> a{uni(rng), uni(rng)}, b{uni(rng), uni(rng)}, c{uni(rng), uni(rng)};
        if (std::abs(c) < 1e-3) continue;
        ScaledComplex sa = normalized(a), sb = normalized(b), sc = normalized(c);
        std::complex<double> want = (a * b) / c + a - b;
        ScaledComplex got = (sa * sb) / sc + sa - sb;
        CHECK(std::abs(got.value() - want) <= 1e-13 * (std::abs(want) + 1.0));
        if (!got.is_zero()) {
            CHECK(std::abs(got.mantissa) >= 1.0);
            CHECK(std::abs(got.mantissa) < 2.0);
        }
    }
}
