#pragma once

#include <utility>
#include <vector>

namespace pseudoexit {
namespace oracles {

// Independent closed-form evaluations used as test oracles. Nothing here may
// touch the determinant engine: agreement between the two routes is the test.

// N = 2 (biharmonic) closed forms, in terms of nu = lambda/4.
// Delta(lambda) = 4 [cosh(2 nu^(1/4) (b-a)) + cos(2 nu^(1/4) (b-a)) - 2].
double biharmonic_delta(double a, double b, double lambda);

// Delta_k^side(lambda; x) for k in {0, 1}. The k = 1 forms carry an extra
// factor sqrt(2) = lambda^(1/4) / nu^(1/4) so that the boundary normalization
// d/dx Delta_1^-(lambda; a) = lambda^(1/4) Delta(lambda) holds.
double biharmonic_delta_k(double a, double b, double x, double lambda, int k, bool upper);

// Eigenfunction series for the classical problem (N = 1): heat equation
// u_t = u_xx on (a, b) with absorbing ends. Returns the exit-time density and
// the survival probability at (t; x).
struct BrownianExit {
    double density = 0.0;
    double survival = 0.0;
    bool slow_convergence = false;  // t below 1e-3 (b-a)^2; series impractical
};

BrownianExit brownian_exit_series(double a, double b, double x, double t, int max_terms = 10000);

// Closed-form N = 1 Laplace-domain ratios sinh(sqrt(lambda)(b-x))/sinh(...)
// and its mirror; the hand-derived 2x2 reduction.
std::pair<double, double> brownian_exit_ratios(double a, double b, double x, double lambda);

// Least-squares slope of log|value| against log(lambda) over (lambda, |value|)
// pairs; the power-law probe for the small-lambda scaling.
double asymptotic_slope(const std::vector<std::pair<double, double>>& values);

}  // namespace oracles
}  // namespace pseudoexit
