#include "pseudoexit/inversion.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <thread>

#include "pseudoexit/rational.hpp"

namespace pseudoexit {

namespace {

constexpr double kTargetRel = 1e-9;   // accuracy goal of the automatic path
constexpr int kMaxDigits = 200;
constexpr int kMaxContourNodes = 256;

struct Run {
    double value = 0.0;
    double abs_sum = 0.0;  // sum of term magnitudes; cancellation scale
};

// Fixed-Talbot rule: s(theta) = r theta (cot theta + i), r = 2M/(5t),
// f(t) ~ (r/M) [ e^{rt} F(r)/2 + sum_k Re( e^{t s_k} F(s_k) (1 + i sigma_k) ) ].
template <class R, class F>
Run talbot_sum(F&& f, const R& t, int M) {
    using C = complex_of_t<R>;
    using std::abs;
    using std::cos;
    using std::exp;
    using std::sin;
    const R pi = pi_value<R>();
    const R r = R(2 * M) / (R(5) * t);
    C f0 = f(C(r));
    R ert = exp(r * t);
    R acc = R(0.5) * ert * real(f0);
    R asum = R(0.5) * ert * abs(f0);
    for (int k = 1; k < M; ++k) {
        R theta = pi * R(k) / R(M);
        R cot = cos(theta) / sin(theta);
        C s(r * theta * cot, r * theta);
        R sigma = theta + (theta * cot - R(1)) * cot;
        C term = exp(C(t) * s) * f(s) * C(R(1), sigma);
        acc += real(term);
        asum += abs(term);
    }
    R scale = r / R(M);
    return {to_double(scale * acc), to_double(scale * asum)};
}

// Euler summation of the Bromwich series: beta_k = M ln10 / 3 + i pi k,
// f(t) ~ (10^{M/3}/t) sum_{k=0}^{2M} (-1)^k xi_k Re F(beta_k / t).
// The xi are dyadic rationals; they are assembled as exact integer numerators
// over 2^M so the extended-precision runs are not capped at double accuracy.
std::vector<BigInt> euler_xi_numerators(int M) {
    std::vector<BigInt> u(std::size_t(2 * M + 1), BigInt(1) << M);
    u[0] = BigInt(1) << (M - 1);
    u[std::size_t(2 * M)] = 1;
    for (int k = 1; k < M; ++k)
        u[std::size_t(2 * M - k)] = u[std::size_t(2 * M - k + 1)] + binomial(M, k);
    return u;
}

template <class R>
R from_bigint(const BigInt& v) {
    return R(v.str());
}
template <>
double from_bigint<double>(const BigInt& v) {
    return v.convert_to<double>();
}

template <class R, class F>
Run euler_sum(F&& f, const R& t, int M) {
    using C = complex_of_t<R>;
    using std::abs;
    using std::log;
    using std::pow;
    auto numerators = euler_xi_numerators(M);
    const R half_pow = pow(R(2), -M);
    std::vector<R> xi;
    xi.reserve(numerators.size());
    for (const auto& u : numerators) xi.push_back(from_bigint<R>(u) * half_pow);
    const R beta0 = R(M) * log(R(10)) / R(3);
    const R pi = pi_value<R>();
    R acc{}, asum{};
    for (int k = 0; k <= 2 * M; ++k) {
        C beta(beta0 / t, pi * R(k) / t);
        R term = xi[std::size_t(k)] * real(f(beta));
        if (k % 2 == 1) term = -term;
        acc += term;
        asum += abs(term);
    }
    R scale = pow(R(10), R(M) / R(3)) / t;
    return {to_double(scale * acc), to_double(scale * asum)};
}

// Exact Stehfest weights for an even term count n = 2M.
std::vector<Rational> stehfest_weights(int n) {
    const int M = n / 2;
    std::vector<Rational> z;
    z.reserve(std::size_t(n));
    const BigInt mfact = factorial(M);
    for (int k = 1; k <= n; ++k) {
        Rational s = 0;
        for (int j = (k + 1) / 2; j <= std::min(k, M); ++j) {
            BigInt num = binomial(M, j) * binomial(2 * j, j) * binomial(j, k - j);
            BigInt jp = 1;
            for (int i = 0; i <= M; ++i) jp *= j;
            s += Rational(jp * num, mfact);
        }
        if ((M + k) % 2 == 1) s = -s;
        z.push_back(s);
    }
    return z;
}

int gs_auto_digits(int n) { return int(std::ceil(1.5 * n)); }

int contour_nodes_for(int digits, int base) {
    // fixed Talbot and Euler both deliver roughly 0.6 digits per node
    return std::min(kMaxContourNodes, std::max(base, int(std::ceil(digits / 0.55)) + 8));
}

struct MethodOutcome {
    double value = 0.0;
    double abs_err = 0.0;
    bool escalated = false;
};

Run run_contour_double(const LaplaceTransform& F, InversionMethod m, double t, int nodes) {
    if (m == InversionMethod::talbot)
        return talbot_sum<double>([&](std::complex<double> s) { return F.eval_d(s); }, t, nodes);
    return euler_sum<double>([&](std::complex<double> s) { return F.eval_d(s); }, t,
                             std::max(8, nodes / 2));
}

Run run_contour_mp(const LaplaceTransform& F, InversionMethod m, double t, int nodes,
                   int digits) {
    ScopedPrecision prec(unsigned(digits + 10));
    BigFloat tb(t);
    auto f = [&](const MpComplex<BigFloat>& s) { return F.eval_mp(s); };
    if (m == InversionMethod::talbot) return talbot_sum<BigFloat>(f, tb, nodes);
    return euler_sum<BigFloat>(f, tb, std::max(8, nodes / 2));
}

// Double-precision contour evaluation with automatic escalation to extended
// precision when the term-magnitude sum says double cannot reach kTargetRel.
MethodOutcome contour_auto(const LaplaceTransform& F, InversionMethod m, double t,
                           const InversionConfig& cfg) {
    if (cfg.precision_digits > 0 && F.eval_mp) {
        int digits = cfg.precision_digits;
        Run run = run_contour_mp(F, m, t, contour_nodes_for(digits, cfg.node_count), digits);
        return {run.value, run.abs_sum * std::pow(10.0, -digits), true};
    }

    Run run = run_contour_double(F, m, t, cfg.node_count);
    double err = 3e-16 * run.abs_sum;
    if (!cfg.auto_precision || !F.eval_mp || err <= kTargetRel * std::abs(run.value))
        return {run.value, err, false};

    double scale = std::max(std::abs(run.value), err * 1e-6);
    int digits = int(std::ceil(std::log10(std::max(run.abs_sum / scale, 10.0)))) + 12;
    MethodOutcome best{run.value, err, false};
    for (int iter = 0; iter < 4; ++iter) {
        digits = std::clamp(digits, 24, kMaxDigits);
        Run mp = run_contour_mp(F, m, t, contour_nodes_for(digits, cfg.node_count), digits);
        double e2 = mp.abs_sum * std::pow(10.0, -digits);
        best = {mp.value, e2, true};
        // stop when resolved, or when the value sits below the noise floor of
        // an already-extended run (established as zero at that scale)
        if (e2 <= kTargetRel * std::abs(mp.value) || std::abs(mp.value) <= e2 ||
            digits >= kMaxDigits)
            break;
        double s2 = std::max(std::abs(mp.value), e2 * 1e-9);
        digits = int(std::ceil(std::log10(std::max(mp.abs_sum / s2, 10.0)))) + 12;
    }
    return best;
}

MethodOutcome gaver_stehfest_run(const LaplaceTransform& F, double t,
                                 const InversionConfig& cfg) {
    if (!F.eval_mp)
        throw std::invalid_argument("gaver_stehfest requires an extended-precision evaluator");
    const int n = cfg.node_count;
    const int digits =
        cfg.precision_digits > 0 ? cfg.precision_digits : gs_auto_digits(n);
    auto weights = stehfest_weights(n);
    ScopedPrecision prec(unsigned(digits + 8));
    const BigFloat ln2t = log(BigFloat(2)) / BigFloat(t);
    BigFloat acc = 0, asum = 0;
    for (int k = 1; k <= n; ++k) {
        // converted in two exact integer steps: the direct rational-to-mpfr
        // route miscomputes in this boost version
        const Rational& wr = weights[std::size_t(k - 1)];
        BigFloat w = BigFloat(boost::multiprecision::numerator(wr)) /
                     BigFloat(boost::multiprecision::denominator(wr));
        BigFloat fv = real(F.eval_mp(MpComplex<BigFloat>(BigFloat(k) * ln2t)));
        acc += w * fv;
        asum += abs(w * fv);
    }
    // cancellation model only; the Stehfest truncation error is not estimated
    return {to_double(acc * ln2t), to_double(asum * ln2t) * std::pow(10.0, -digits), true};
}

MethodOutcome run_method(const LaplaceTransform& F, InversionMethod m, double t,
                         const InversionConfig& cfg) {
    if (m == InversionMethod::gaver_stehfest) return gaver_stehfest_run(F, t, cfg);
    return contour_auto(F, m, t, cfg);
}

bool flag_disagreement(const MethodOutcome& a, const MethodOutcome& b) {
    double diff = std::abs(a.value - b.value);
    double scale = std::max(std::abs(a.value), std::abs(b.value));
    return diff > 1e-4 * scale && diff > 3.0 * (a.abs_err + b.abs_err + 1e-300);
}

}  // namespace

void InversionConfig::validate() const {
    if (node_count < 8) throw std::invalid_argument("InversionConfig: node_count must be >= 8");
    if (method == InversionMethod::gaver_stehfest) {
        if (node_count % 2 != 0)
            throw std::invalid_argument("gaver_stehfest needs an even node_count");
        if (precision_digits > 0 && precision_digits < int(std::ceil(1.5 * node_count)))
            throw std::invalid_argument(
                "gaver_stehfest needs precision_digits >= 1.5 * node_count");
    }
    if (precision_digits < 0) throw std::invalid_argument("precision_digits must be >= 0");
    for (std::size_t i = 0; i < time_grid.size(); ++i) {
        if (time_grid[i] <= 0.0) throw std::invalid_argument("time grid must be positive");
        if (i > 0 && time_grid[i] <= time_grid[i - 1])
            throw std::invalid_argument("time grid must be strictly increasing");
    }
}

LaplaceTransform make_exit_transform(const ProcessParams& params, TransformKind kind, double x,
                                     int k, Side side) {
    if (x < params.a || x > params.b)
        throw std::invalid_argument("make_exit_transform: x must lie in [a, b]");
    auto engine = std::make_shared<DeltaEngine<double>>(params.N, params.a, params.b);
    const int N = params.N;
    const double a = params.a, b = params.b;
    LaplaceTransform out;
    // checked: hands itself over to the extended engine when the determinant
    // cancellation exceeds the double budget (large N, deep small-lambda)
    out.eval_d = [engine, kind, x, k, side](std::complex<double> lam) {
        return exit_transform_checked(kind, *engine, x, k, side, lam);
    };
    // built fresh per call so the roots pick up the active precision
    out.eval_mp = [N, a, b, kind, x, k, side](const MpComplex<BigFloat>& lam) {
        DeltaEngine<BigFloat> eng(N, BigFloat(a), BigFloat(b));
        return exit_transform_value<BigFloat>(kind, eng, BigFloat(x), k, side, lam);
    };
    return out;
}

InversionResult invert_scalar(const LaplaceTransform& transform, double t,
                              const InversionConfig& cfg) {
    cfg.validate();
    if (t <= 0.0) throw std::invalid_argument("invert_scalar: t must be > 0");
    MethodOutcome primary = run_method(transform, cfg.method, t, cfg);
    InversionResult out{primary.value, primary.abs_err, false, primary.escalated};
    if (cfg.cross_check && transform.eval_d) {
        InversionMethod alt = (cfg.method == InversionMethod::talbot)
                                  ? InversionMethod::euler_bromwich
                                  : InversionMethod::talbot;
        MethodOutcome cross = contour_auto(transform, alt, t, cfg);
        out.precision_loss = flag_disagreement(primary, cross);
    }
    return out;
}

double density_zero_time(const ProcessParams& params, double x) {
    const double d = std::min(x - params.a, params.b - x);
    if (d <= 0.0) return 0.0;
    const double n2 = 2.0 * params.N;
    double c = (n2 - 1.0) / n2 * std::pow(d, n2 / (n2 - 1.0));
    return std::pow(c / 70.0, n2 - 1.0) / n2;
}

namespace {

DensityTable build_table(const ProcessParams& params, double x, const InversionConfig& cfg,
                         bool with_joint) {
    cfg.validate();
    if (!(params.a < x && x < params.b))
        throw std::invalid_argument("density table needs a < x < b");

    DensityTable table;
    table.params = params;
    table.x = x;
    table.t = cfg.time_grid.empty() ? default_time_grid(params, x, cfg) : cfg.time_grid;

    const std::size_t n = table.t.size();
    table.density.assign(n, 0.0);
    table.cdf.assign(n, 0.0);
    table.survival.assign(n, 1.0);
    table.flags.assign(n, 0);
    if (with_joint) {
        table.joint_minus.assign(std::size_t(params.N), std::vector<double>(n, 0.0));
        table.joint_plus.assign(std::size_t(params.N), std::vector<double>(n, 0.0));
    }

    auto f_density = make_exit_transform(params, TransformKind::density, x);
    auto f_cdf = make_exit_transform(params, TransformKind::cdf, x);
    std::vector<LaplaceTransform> f_minus, f_plus;
    if (with_joint) {
        for (int k = 0; k < params.N; ++k) {
            f_minus.push_back(make_exit_transform(params, TransformKind::joint, x, k, Side::minus));
            f_plus.push_back(make_exit_transform(params, TransformKind::joint, x, k, Side::plus));
        }
    }

    const double floor_t = density_zero_time(params, x);
    for (std::size_t i = 0; i < n; ++i) {
        double t = table.t[i];
        if (t < floor_t) continue;  // reported as exact zeros / survival 1
        bool loss = false;
        auto acc = [&](const LaplaceTransform& f) {
            InversionResult r = invert_scalar(f, t, cfg);
            loss |= r.precision_loss;
            return r.value;
        };
        table.density[i] = acc(f_density);
        table.cdf[i] = acc(f_cdf);
        table.survival[i] = 1.0 - table.cdf[i];
        if (with_joint) {
            for (int k = 0; k < params.N; ++k) {
                table.joint_minus[std::size_t(k)][i] = acc(f_minus[std::size_t(k)]);
                table.joint_plus[std::size_t(k)][i] = acc(f_plus[std::size_t(k)]);
            }
        }
        if (loss) {
            table.flags[i] = 1;
            table.precision_loss = true;
        }
    }
    return table;
}

}  // namespace

DensityTable exit_time_density(const ProcessParams& params, double x,
                               const InversionConfig& cfg) {
    return build_table(params, x, cfg, false);
}

DensityTable exit_joint_weights(const ProcessParams& params, double x,
                                const InversionConfig& cfg) {
    return build_table(params, x, cfg, true);
}

InversionResult survival_probability(const ProcessParams& params, double x, double t,
                                     const InversionConfig& cfg) {
    cfg.validate();
    if (!(params.a < x && x < params.b))
        throw std::invalid_argument("survival_probability needs a < x < b");
    if (t <= 0.0) throw std::invalid_argument("survival_probability: t must be > 0");
    if (t < density_zero_time(params, x)) return {1.0, 0.0, false, false};
    return invert_scalar(make_exit_transform(params, TransformKind::survival, x), t, cfg);
}

double joint_total_mass(const ProcessParams& params, double x, int k, Side side) {
    if (x < params.a || x > params.b)
        throw std::invalid_argument("joint_total_mass: x must lie in [a, b]");
    ScopedPrecision prec(60);
    DeltaEngine<BigFloat> eng(params.N, BigFloat(params.a), BigFloat(params.b));
    using C = MpComplex<BigFloat>;
    BigFloat scale = pow(BigFloat(params.width()), 2 * params.N);
    BigFloat lam0 = BigFloat(1e-6) / scale;
    auto value = [&](const BigFloat& lam) {
        return real(exit_transform_value<BigFloat>(TransformKind::joint, eng, BigFloat(x), k,
                                                   side, C(lam)));
    };
    // one Richardson step removes the O(lambda) bias of the Abelian limit
    BigFloat v1 = value(lam0), v2 = value(lam0 / 2);
    return to_double(2 * v2 - v1);
}

double calibrate_horizon(const ProcessParams& params, double x, const InversionConfig& cfg,
                         double tol) {
    auto f_cdf = make_exit_transform(params, TransformKind::cdf, x);
    InversionConfig probe = cfg;
    probe.cross_check = false;
    probe.time_grid.clear();
    auto tail = [&](double t) { return 1.0 - invert_scalar(f_cdf, t, probe).value; };

    double t = 1e-2 * std::pow(params.width(), 2.0 * params.N);
    const double floor_t = std::max(4.0 * density_zero_time(params, x), 1e-300);
    int i = 0;
    for (; i < 120 && tail(t) > tol; ++i) t *= 1.7;
    if (i == 120)
        throw std::runtime_error("calibrate_horizon: tail mass did not reach the tolerance");
    // tighten back down so the horizon sits near the actual crossing
    while (t / 1.35 > floor_t && tail(t / 1.35) <= tol) t /= 1.35;
    return t;
}

std::vector<double> default_time_grid(const ProcessParams& params, double x,
                                      const InversionConfig& cfg, int count) {
    if (count < 2) throw std::invalid_argument("default_time_grid: count must be >= 2");
    double hi = calibrate_horizon(params, x, cfg);
    // four decades below the horizon, but never below the zero cutoff
    double lo = std::max(hi * 1e-4, 2.0 * density_zero_time(params, x));
    std::vector<double> grid(static_cast<std::size_t>(count));
    double step = std::log(hi / lo) / (count - 1);
    for (int i = 0; i < count; ++i) grid[std::size_t(i)] = lo * std::exp(step * i);
    return grid;
}

int max_threads() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PSEUDOEXIT_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && cap < long(hw)) return int(cap);
        if (cap >= long(hw)) return int(hw);
    }
    return int(hw);
}

void parallel_for(int count, const std::function<void(int)>& body) {
    int workers = std::min(max_threads(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace pseudoexit
