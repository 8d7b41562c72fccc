#include "pseudoexit/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace pseudoexit {
namespace oracles {

double biharmonic_delta(double a, double b, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("biharmonic_delta: lambda must be >= 0");
    double q = std::pow(lambda / 4.0, 0.25);
    return 4.0 * (std::cosh(2.0 * q * (b - a)) + std::cos(2.0 * q * (b - a)) - 2.0);
}

double biharmonic_delta_k(double a, double b, double x, double lambda, int k, bool upper) {
    if (lambda < 0.0) throw std::invalid_argument("biharmonic_delta_k: lambda must be >= 0");
    if (k != 0 && k != 1) throw std::invalid_argument("biharmonic_delta_k: k must be 0 or 1");
    double q = std::pow(lambda / 4.0, 0.25);
    // The minus family uses arguments (x - a) and (x + a - 2b); the plus
    // family is the mirror image obtained by swapping a and b.
    double u = upper ? q * (x - b) : q * (x - a);
    double w = upper ? q * (x + b - 2.0 * a) : q * (x + a - 2.0 * b);
    if (k == 0) {
        return 4.0 * (std::cosh(u) * std::cos(w) + std::sinh(u) * std::sin(w) +
                      std::cosh(w) * std::cos(u) - std::sinh(w) * std::sin(u) -
                      2.0 * std::cosh(u) * std::cos(u));
    }
    return 4.0 * std::sqrt(2.0) *
           (std::cosh(w) * std::sin(u) + std::sinh(u) * std::cos(w) -
            std::cosh(u) * std::sin(u) - std::sinh(u) * std::cos(u));
}

namespace {

BrownianExit brownian_exit_impl(double a, double b, double x, double t, int max_terms) {
    BrownianExit out;
    const double L = b - a;
    if (t < 1e-3 * L * L) {
        out.slow_convergence = true;
        return out;
    }
    // survival S = sum_{n odd} (4/(n pi)) exp(-(n pi / L)^2 t) sin(n pi (x-a)/L),
    // density I = -dS/dt; even-n coefficients vanish identically, so only odd
    // terms enter the truncation rule
    double S = 0.0, I = 0.0;
    for (int n = 1; n < 2 * max_terms; n += 2) {
        double w = n * M_PI / L;
        double cn = 4.0 / (n * M_PI);
        double damp = std::exp(-w * w * t);
        double term = cn * damp * std::sin(w * (x - a));
        S += term;
        I += w * w * term;
        if (cn * damp * (1.0 + w * w) < 1e-16) break;
    }
    out.density = I;
    out.survival = S;
    return out;
}

}  // namespace

BrownianExit brownian_exit_series(double a, double b, double x, double t, int max_terms) {
    if (!(a < x && x < b)) throw std::invalid_argument("brownian_exit_series: need a < x < b");
    if (t <= 0.0) throw std::invalid_argument("brownian_exit_series: t must be > 0");
    return brownian_exit_impl(a, b, x, t, max_terms);
}

std::pair<double, double> brownian_exit_ratios(double a, double b, double x, double lambda) {
    double s = std::sqrt(lambda);
    double den = std::sinh(s * (b - a));
    return {std::sinh(s * (b - x)) / den, std::sinh(s * (x - a)) / den};
}

double asymptotic_slope(const std::vector<std::pair<double, double>>& values) {
    if (values.size() < 3)
        throw std::invalid_argument("asymptotic_slope: need at least 3 samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [lam, v] : values) {
        double lx = std::log(lam), ly = std::log(std::abs(v));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double n = double(values.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracles
}  // namespace pseudoexit
