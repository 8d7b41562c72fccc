#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "pseudoexit/complexmp.hpp"
#include "pseudoexit/scaled.hpp"

namespace pseudoexit {

// Problem instance: interval (a, b) and the order 2N of the spatial operator
// d^{2N}/dx^{2N} with sign kappa = (-1)^(N-1). N = 1 is the classical
// Brownian case and serves as the oracle instance.
struct ProcessParams {
    int N = 2;
    double a = 0.0;
    double b = 1.0;

    ProcessParams() = default;
    ProcessParams(int order, double lo, double hi) : N(order), a(lo), b(hi) {
        if (N < 1) throw std::invalid_argument("ProcessParams: N must be >= 1");
        if (!(a < b)) throw std::invalid_argument("ProcessParams: requires a < b");
    }

    int kappa() const { return (N % 2 == 1) ? +1 : -1; }
    double width() const { return b - a; }
};

// The 2N complex roots theta_l of kappa, theta_l = exp(i pi (2l + N - 1) / (2N)),
// l = 1..2N, stored in that index order. The first N roots have negative real
// part, the last N are their negatives.
struct RootSystem {
    int N = 0;
    std::vector<std::complex<double>> roots;

    const std::complex<double>& theta(int l) const { return roots[std::size_t(l - 1)]; }
};

RootSystem compute_roots(const ProcessParams& params);

// Templated root builder shared with the extended-precision engine.
template <class R>
std::vector<complex_of_t<R>> unit_roots(int N) {
    std::vector<complex_of_t<R>> out;
    out.reserve(std::size_t(2 * N));
    const R pi = pi_value<R>();
    for (int l = 1; l <= 2 * N; ++l)
        out.push_back(polar_unit(pi * R(2 * l + N - 1) / R(2 * N)));
    return out;
}

// e_lambda^{theta z} = exp(lambda^{1/(2N)} theta z) in scaled form, lambda >= 0
// with the real positive root. Exactly 1 at lambda = 0.
ScaledComplex exp_lambda(double lambda, int N, std::complex<double> theta, double z);

}  // namespace pseudoexit
