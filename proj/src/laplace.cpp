#include "pseudoexit/laplace.hpp"

#include <cmath>

namespace pseudoexit {

namespace {

constexpr double kDoubleDigitBudget = 12.0;
constexpr int kMaxEngineDigits = 140;

void check_point(const ProcessParams& p, double lambda, double x) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
    if (x < p.a || x > p.b) throw std::invalid_argument("x must lie in [a, b]");
}

int digits_for(double lost) {
    return std::min(kMaxEngineDigits, int(std::ceil(lost)) + 18);
}

ScaledComplex demote(const Scaled<MpComplex<BigFloat>>& s) {
    if (s.is_zero()) return {};
    return {to_std_complex(s.mantissa), to_double(s.log_scale)};
}

}  // namespace

double lost_digits(const DeltaEngine<double>& eng, const DeltaEngine<double>::Basis& basis,
                   const ScaledComplex& delta) {
    if (delta.is_zero()) return HUGE_VAL;
    return (eng.scale_log(basis) - delta.log_abs()) / std::log(10.0);
}

std::complex<double> exit_transform_checked(TransformKind kind, const DeltaEngine<double>& eng,
                                            double x, int k, Side side,
                                            std::complex<double> lambda) {
    auto basis = eng.prepare(lambda);
    ScaledComplex delta = eng.delta(basis);
    double lost = lost_digits(eng, basis, delta);
    if (lost <= kDoubleDigitBudget)
        return exit_transform_value<double>(kind, eng, basis, x, k, side, lambda);
    ScopedPrecision prec(unsigned(digits_for(lost)));
    DeltaEngine<BigFloat> engm(eng.order(), BigFloat(eng.lower()), BigFloat(eng.upper()));
    return to_std_complex(exit_transform_value<BigFloat>(kind, engm, BigFloat(x), k, side,
                                                         to_precision<BigFloat>(lambda)));
}

ComplexMatrix build_delta_matrix(const ProcessParams& params, const RootSystem& roots,
                                 double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
    const int N = params.N;
    ComplexMatrix m(2 * N);
    for (int l = 0; l < 2 * N; ++l) {
        const auto& th = roots.roots[std::size_t(l)];
        std::complex<double> p = 1.0;
        for (int r = 0; r < N; ++r) {
            m.at(r, l) = p * exp_lambda(lambda, N, th, params.a).value();
            m.at(N + r, l) = p * exp_lambda(lambda, N, th, params.b).value();
            p *= th;
        }
    }
    return m;
}

LaplaceEvaluation eval(const ProcessParams& params, const RootSystem& roots, double lambda,
                       double x) {
    (void)roots;
    check_point(params, lambda, x);
    DeltaEngine<double> eng(params.N, params.a, params.b);
    auto basis = eng.prepare(std::complex<double>(lambda, 0.0));
    auto vals = eng.eval(basis, x);

    double lost = lambda == 0.0 ? 0.0 : lost_digits(eng, basis, vals.delta);
    if (lost > kDoubleDigitBudget) {
        ScopedPrecision prec(unsigned(digits_for(lost)));
        DeltaEngine<BigFloat> engm(params.N, BigFloat(params.a), BigFloat(params.b));
        auto mp = engm.eval(MpComplex<BigFloat>(BigFloat(lambda)), BigFloat(x));
        vals.delta = demote(mp.delta);
        for (int k = 0; k < params.N; ++k) {
            vals.minus[std::size_t(k)] = demote(mp.minus[std::size_t(k)]);
            vals.plus[std::size_t(k)] = demote(mp.plus[std::size_t(k)]);
        }
    }

    LaplaceEvaluation out;
    out.lambda = lambda;
    out.x = x;
    out.delta = vals.delta;
    out.delta_minus = vals.minus;
    out.delta_plus = vals.plus;
    out.degenerate = vals.delta.is_zero();
    if (!out.degenerate) {
        out.ratio_minus.resize(std::size_t(params.N));
        out.ratio_plus.resize(std::size_t(params.N));
        for (int k = 0; k < params.N; ++k) {
            out.ratio_minus[std::size_t(k)] = (vals.minus[std::size_t(k)] / vals.delta).value();
            out.ratio_plus[std::size_t(k)] = (vals.plus[std::size_t(k)] / vals.delta).value();
        }
    }
    return out;
}

ScaledComplex derivative_delta(const ProcessParams& params, const RootSystem& roots,
                               double lambda, double x, Side side, int k, int order) {
    (void)roots;
    check_point(params, lambda, x);
    DeltaEngine<double> eng(params.N, params.a, params.b);
    auto basis = eng.prepare(std::complex<double>(lambda, 0.0));
    double lost = lambda == 0.0 ? 0.0 : lost_digits(eng, basis, eng.delta(basis));
    if (lost <= kDoubleDigitBudget) return eng.derivative(basis, x, side, k, order);
    ScopedPrecision prec(unsigned(digits_for(lost)));
    DeltaEngine<BigFloat> engm(params.N, BigFloat(params.a), BigFloat(params.b));
    return demote(
        engm.derivative(MpComplex<BigFloat>(BigFloat(lambda)), BigFloat(x), side, k, order));
}

std::optional<double> feynman_kac(const ProcessParams& params, const RootSystem& roots,
                                  double lambda, double x, const BoundaryData& bd) {
    if (int(bd.at_a.size()) != params.N || int(bd.at_b.size()) != params.N)
        throw std::invalid_argument("boundary data must have N entries per endpoint");
    auto ev = eval(params, roots, lambda, x);
    if (ev.degenerate) return std::nullopt;

    std::complex<double> acc = 0.0;
    double scale = 0.0;
    for (int k = 0; k < params.N; ++k) {
        double pref = (k == 0) ? 1.0 : std::pow(lambda, -double(k) / (2.0 * params.N));
        std::complex<double> term = pref * (ev.ratio_minus[std::size_t(k)] * bd.at_a[std::size_t(k)] +
                                            ev.ratio_plus[std::size_t(k)] * bd.at_b[std::size_t(k)]);
        acc += term;
        scale += std::abs(term);
    }
    // determinant ratios are real for real lambda; anything beyond roundoff
    // residue indicates a broken evaluation
    if (std::abs(acc.imag()) > 1e-8 * std::max(scale, 1e-30))
        throw std::runtime_error("feynman_kac: realness check failed");
    return acc.real();
}

LimitCoefficients limit_coefficients(const RootSystem& roots) {
    const int N = roots.N;
    LimitCoefficients lc;
    lc.N = N;
    lc.alpha.assign(std::size_t(N), std::vector<std::complex<double>>(std::size_t(N)));
    for (int l = 0; l < N; ++l) {
        // numerator prod_{m != l} (z - theta_m), ascending coefficients
        std::vector<std::complex<double>> poly{1.0};
        std::complex<double> denom = 1.0;
        for (int m = 0; m < N; ++m) {
            if (m == l) continue;
            const auto& th = roots.roots[std::size_t(m)];
            denom *= roots.roots[std::size_t(l)] - th;
            std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i] -= th * poly[i];
                next[i + 1] += poly[i];
            }
            poly = std::move(next);
        }
        for (int k = 0; k < N; ++k)
            lc.alpha[std::size_t(k)][std::size_t(l)] = poly[std::size_t(k)] / denom;
    }
    return lc;
}

std::vector<std::complex<double>> solve_boundary_system(const ProcessParams& params,
                                                        const RootSystem& roots, double lambda,
                                                        const BoundaryData& bd) {
    if (lambda <= 0.0) throw std::invalid_argument("lambda must be > 0");
    const int N = params.N;
    double mu = std::pow(lambda, 1.0 / (2.0 * N));
    ComplexMatrix m(2 * N);
    std::vector<std::complex<double>> rhs(std::size_t(2 * N));
    for (int l = 0; l < 2 * N; ++l) {
        const auto& th = roots.roots[std::size_t(l)];
        std::complex<double> ea = std::exp(mu * th * params.a);
        std::complex<double> eb = std::exp(mu * th * params.b);
        std::complex<double> p = 1.0;
        for (int k = 0; k < N; ++k) {
            m.at(k, l) = p * ea;
            m.at(N + k, l) = p * eb;
            p *= th;
        }
    }
    for (int k = 0; k < N; ++k) {
        double pref = (k == 0) ? 1.0 : std::pow(lambda, -double(k) / (2.0 * N));
        rhs[std::size_t(k)] = pref * bd.at_a[std::size_t(k)];
        rhs[std::size_t(N + k)] = pref * bd.at_b[std::size_t(k)];
    }
    return solve_linear(std::move(m), std::move(rhs));
}

double evaluate_boundary_solution(const ProcessParams& params, const RootSystem& roots,
                                  double lambda, double x,
                                  const std::vector<std::complex<double>>& coeffs) {
    double mu = std::pow(lambda, 1.0 / (2.0 * params.N));
    std::complex<double> acc = 0.0;
    for (int l = 0; l < 2 * params.N; ++l)
        acc += coeffs[std::size_t(l)] * std::exp(mu * roots.roots[std::size_t(l)] * x);
    return acc.real();
}

}  // namespace pseudoexit
