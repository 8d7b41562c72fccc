#include "pseudoexit/process.hpp"

#include <cmath>

namespace pseudoexit {

RootSystem compute_roots(const ProcessParams& params) {
    RootSystem rs;
    rs.N = params.N;
    rs.roots = unit_roots<double>(params.N);
    return rs;
}

ScaledComplex exp_lambda(double lambda, int N, std::complex<double> theta, double z) {
    if (lambda < 0.0) throw std::invalid_argument("exp_lambda: lambda must be >= 0");
    double mu = std::pow(lambda, 1.0 / (2.0 * N));
    // |exp(mu theta z)| = exp(mu Re(theta) z); the phase stays on the unit circle
    return {polar_unit(mu * theta.imag() * z), mu * theta.real() * z};
}

}  // namespace pseudoexit
