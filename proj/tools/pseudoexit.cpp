// Command-line interface: exit-time / exit-location computations for the
// pseudo-Brownian motion of order 2N on an interval, with CSV/JSON output and
// a built-in verification suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "pseudoexit/hermite.hpp"
#include "pseudoexit/inversion.hpp"
#include "pseudoexit/laplace.hpp"
#include "pseudoexit/tables.hpp"
#include "pseudoexit/verify.hpp"
#include "pseudoexit/version.hpp"

namespace {

using namespace pseudoexit;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitArguments = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitPrecisionLoss = 4;

struct GridSpec {
    double lo = 0.0, hi = 0.0;
    int count = 0;
};

GridSpec parse_grid(const std::string& spec) {
    GridSpec g;
    auto c1 = spec.find(':');
    auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("grid spec must be lo:hi:count");
    g.lo = std::stod(spec.substr(0, c1));
    g.hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    g.count = std::stoi(spec.substr(c2 + 1));
    if (g.count < 1 || !(g.lo < g.hi) )
        throw std::invalid_argument("grid spec must satisfy lo < hi, count >= 1");
    return g;
}

std::vector<double> log_grid(const GridSpec& g) {
    if (g.lo <= 0.0) throw std::invalid_argument("log grid needs lo > 0");
    std::vector<double> out(std::size_t(g.count));
    double step = g.count > 1 ? std::log(g.hi / g.lo) / (g.count - 1) : 0.0;
    for (int i = 0; i < g.count; ++i) out[std::size_t(i)] = g.lo * std::exp(step * i);
    return out;
}

std::vector<double> linear_grid(const GridSpec& g) {
    std::vector<double> out(std::size_t(g.count));
    double step = g.count > 1 ? (g.hi - g.lo) / (g.count - 1) : 0.0;
    for (int i = 0; i < g.count; ++i) out[std::size_t(i)] = g.lo + step * i;
    return out;
}

struct CommonArgs {
    int n = 2;
    std::string a = "0", b = "1", x;
    std::string lambda_grid, time_grid;
    std::string method = "talbot";
    int nodes = 32;
    int digits = 0;
    std::string format;  // empty = command default
    std::string out_path;
    bool strict = false;
};

void add_instance_flags(CLI::App* cmd, CommonArgs& args, bool need_x) {
    cmd->add_option("--n", args.n, "order N of the pseudo-process (>= 1)")->required();
    cmd->add_option("--a", args.a, "lower endpoint (rational syntax accepted, e.g. -1/3)");
    cmd->add_option("--b", args.b, "upper endpoint");
    auto* xopt = cmd->add_option("--x", args.x, "starting point in [a, b]");
    if (need_x) xopt->required();
}

void add_output_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"csv", "json", "text"}));
    cmd->add_option("--out", args.out_path, "write output to this path instead of stdout");
}

void add_inversion_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--method", args.method, "inversion method")
        ->check(CLI::IsMember({"talbot", "gs", "euler"}));
    cmd->add_option("--nodes", args.nodes, "node count for the inversion rule");
    cmd->add_option("--digits", args.digits, "working decimal digits (gaver-stehfest)");
    cmd->add_flag("--strict", args.strict, "exit 4 when any point is flagged PRECISION_LOSS");
}

InversionConfig make_inversion_config(const CommonArgs& args) {
    InversionConfig cfg;
    if (args.method == "gs")
        cfg.method = InversionMethod::gaver_stehfest;
    else if (args.method == "euler")
        cfg.method = InversionMethod::euler_bromwich;
    cfg.node_count = args.nodes;
    cfg.precision_digits = args.digits;
    if (!args.time_grid.empty()) cfg.time_grid = linear_grid(parse_grid(args.time_grid));
    return cfg;
}

ProcessParams make_params(const CommonArgs& args) {
    return {args.n, to_double(parse_rational(args.a)), to_double(parse_rational(args.b))};
}

void emit(const Table& table, const CommonArgs& args, const std::string& command,
          const std::vector<std::pair<std::string, std::string>>& extra = {}) {
    std::vector<std::pair<std::string, std::string>> meta{
        {"command", command}, {"version", PSEUDOEXIT_VERSION},
        {"n", std::to_string(args.n)},  {"a", args.a},
        {"b", args.b}};
    if (!args.x.empty()) meta.emplace_back("x", args.x);
    for (const auto& kv : extra) meta.push_back(kv);

    std::string payload =
        (args.format == "json") ? table.to_json(meta) : table.to_csv();
    if (args.out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(args.out_path);
        if (!f) throw std::runtime_error("cannot open output path " + args.out_path);
        f << payload;
    }
}

int run_roots(const CommonArgs& args) {
    ProcessParams params(args.n, 0.0, 1.0);
    RootSystem roots = compute_roots(params);
    Table t;
    std::vector<double> idx, re, im;
    for (int l = 1; l <= 2 * params.N; ++l) {
        idx.push_back(l);
        re.push_back(roots.theta(l).real());
        im.push_back(roots.theta(l).imag());
    }
    t.add_numeric("l", idx);
    t.add_numeric("re", re);
    t.add_numeric("im", im);
    emit(t, args, "roots");
    return kExitOk;
}

int run_laplace(const CommonArgs& args, const std::vector<double>& lambda_points) {
    ProcessParams params = make_params(args);
    RootSystem roots = compute_roots(params);
    double x = to_double(parse_rational(args.x));
    std::vector<double> lambdas = lambda_points;
    if (lambdas.empty())
        lambdas = log_grid(parse_grid(
            args.lambda_grid.empty() ? std::string("1e-2:1e2:17") : args.lambda_grid));

    std::vector<double> delta, logdelta;
    std::vector<std::vector<double>> rm(std::size_t(params.N)), rp(std::size_t(params.N));
    for (double lam : lambdas) {
        auto ev = eval(params, roots, lam, x);
        if (ev.degenerate) return kExitDegenerate;
        delta.push_back(ev.delta.value().real());
        logdelta.push_back(ev.delta.log_abs() / std::log(10.0));
        for (int k = 0; k < params.N; ++k) {
            rm[std::size_t(k)].push_back(ev.ratio_minus[std::size_t(k)].real());
            rp[std::size_t(k)].push_back(ev.ratio_plus[std::size_t(k)].real());
        }
    }
    Table t;
    t.add_numeric("lambda", lambdas);
    t.add_numeric("delta", delta);
    t.add_numeric("log10_abs_delta", logdelta);
    for (int k = 0; k < params.N; ++k)
        t.add_numeric("ratio_minus_" + std::to_string(k), rm[std::size_t(k)]);
    for (int k = 0; k < params.N; ++k)
        t.add_numeric("ratio_plus_" + std::to_string(k), rp[std::size_t(k)]);
    emit(t, args, "laplace");
    return kExitOk;
}

int run_hermite(const CommonArgs& args) {
    Rational a = parse_rational(args.a), b = parse_rational(args.b);
    auto basis = build_hermite_basis(args.n, a, b);
    std::optional<Rational> x;
    if (!args.x.empty()) x = parse_rational(args.x);

    Table t;
    std::vector<std::string> side, exact_weight;
    std::vector<double> kcol, weight;
    std::vector<std::vector<std::string>> coeffs(std::size_t(2 * args.n));
    auto push = [&](const char* tag, int k, const RationalPoly& h) {
        side.push_back(tag);
        kcol.push_back(k);
        if (x) {
            Rational w = h.eval(*x);
            exact_weight.push_back(to_string(w));
            weight.push_back(to_double(w));
        }
        for (int c = 0; c < 2 * args.n; ++c)
            coeffs[std::size_t(c)].push_back(to_string(h.coefficient(c)));
    };
    for (int k = 0; k < args.n; ++k) push("minus", k, basis.h_minus[std::size_t(k)]);
    for (int k = 0; k < args.n; ++k) push("plus", k, basis.h_plus[std::size_t(k)]);

    t.add_text("side", side);
    t.add_numeric("k", kcol);
    if (x) {
        t.add_text("weight_exact", exact_weight);
        t.add_numeric("weight", weight);
    }
    for (int c = 0; c < 2 * args.n; ++c)
        t.add_text("coeff_" + std::to_string(c), coeffs[std::size_t(c)]);
    emit(t, args, "hermite");
    return kExitOk;
}

int run_ruin(const CommonArgs& args) {
    Rational a = parse_rational(args.a), b = parse_rational(args.b);
    Rational x = parse_rational(args.x);
    auto basis = build_hermite_basis(args.n, a, b);
    auto [lower, upper] = ruin_probabilities(basis, x);
    if (args.format.empty() || args.format == "text") {
        std::cout << "p_lower=" << to_string(lower) << " p_upper=" << to_string(upper) << "\n";
        return kExitOk;
    }
    Table t;
    t.add_text("p_lower_exact", {to_string(lower)});
    t.add_numeric("p_lower", {to_double(lower)});
    t.add_text("p_upper_exact", {to_string(upper)});
    t.add_numeric("p_upper", {to_double(upper)});
    emit(t, args, "ruin");
    return kExitOk;
}

int run_moments(const CommonArgs& args, int p) {
    Rational a = parse_rational(args.a), b = parse_rational(args.b);
    Rational x = parse_rational(args.x);
    auto basis = build_hermite_basis(args.n, a, b);
    std::vector<Rational> mono(std::size_t(p) + 1, Rational(0));
    mono.back() = 1;
    Rational value = expected_exit_polynomial(basis, RationalPoly(mono), x);
    if (args.format.empty() || args.format == "text") {
        std::cout << "p=" << p << " value=" << to_string(value) << " (" << to_double(value)
                  << ")\n";
        return kExitOk;
    }
    Table t;
    t.add_numeric("p", {double(p)});
    t.add_text("value_exact", {to_string(value)});
    t.add_numeric("value", {to_double(value)});
    emit(t, args, "moments", {{"p", std::to_string(p)}});
    return kExitOk;
}

int run_density(const CommonArgs& args, bool with_joint) {
    ProcessParams params = make_params(args);
    double x = to_double(parse_rational(args.x));
    InversionConfig cfg = make_inversion_config(args);
    DensityTable table = with_joint ? exit_joint_weights(params, x, cfg)
                                    : exit_time_density(params, x, cfg);
    Table t;
    t.add_numeric("t", table.t);
    t.add_numeric("density", table.density);
    t.add_numeric("cdf", table.cdf);
    t.add_numeric("survival", table.survival);
    if (with_joint) {
        for (int k = 0; k < params.N; ++k)
            t.add_numeric("I_minus_" + std::to_string(k), table.joint_minus[std::size_t(k)]);
        for (int k = 0; k < params.N; ++k)
            t.add_numeric("I_plus_" + std::to_string(k), table.joint_plus[std::size_t(k)]);
    }
    std::vector<double> flags(table.flags.begin(), table.flags.end());
    t.add_numeric("precision_loss", flags);
    emit(t, args, with_joint ? "density --joint" : "density",
         {{"method", args.method},
          {"nodes", std::to_string(args.nodes)},
          {"digits", std::to_string(args.digits)},
          {"inversion_target_rel", "1e-09"},
          {"precision_loss_threshold", "1e-04"}});
    if (args.strict && table.precision_loss) return kExitPrecisionLoss;
    return kExitOk;
}

int run_survival(const CommonArgs& args, double t_single) {
    ProcessParams params = make_params(args);
    double x = to_double(parse_rational(args.x));
    InversionConfig cfg = make_inversion_config(args);
    std::vector<double> ts = cfg.time_grid;
    if (ts.empty()) {
        if (t_single <= 0.0)
            throw std::invalid_argument("survival needs --t or --time-grid");
        ts = {t_single};
    }
    bool loss = false;
    std::vector<double> surv;
    for (double t : ts) {
        auto r = survival_probability(params, x, t, cfg);
        loss = loss || r.precision_loss;
        surv.push_back(r.value);
    }
    if ((args.format.empty() || args.format == "text") && surv.size() == 1) {
        std::cout << "t=" << ts[0] << " survival=" << format_double(surv[0]) << "\n";
    } else {
        Table t;
        t.add_numeric("t", ts);
        t.add_numeric("survival", surv);
        emit(t, args, "survival",
             {{"method", args.method},
              {"nodes", std::to_string(args.nodes)},
              {"inversion_target_rel", "1e-09"},
              {"precision_loss_threshold", "1e-04"}});
    }
    if (args.strict && loss) return kExitPrecisionLoss;
    return kExitOk;
}

int run_verify(const std::vector<int>& orders) {
    VerifyOptions opt;
    opt.restrict_n = orders;
    auto results = run_verification(opt);
    std::cout << format_report(results);
    return all_passed(results) ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exit-time and exit-location pseudo-distributions of pseudo-Brownian motion"};
    app.set_version_flag("--version", PSEUDOEXIT_VERSION);
    app.require_subcommand(1);

    CommonArgs args;
    int moment_p = 0;
    double t_single = 0.0;
    bool with_joint = false;
    std::vector<int> verify_orders;
    std::vector<double> lambda_points;

    auto* roots = app.add_subcommand("roots", "the 2N unit roots of kappa");
    roots->add_option("--n", args.n, "order N")->required();
    add_output_flags(roots, args);

    auto* laplace = app.add_subcommand("laplace", "Delta determinants and ratios on a lambda grid");
    add_instance_flags(laplace, args, true);
    laplace->add_option("--lambda-grid", args.lambda_grid, "lo:hi:count, log spaced");
    laplace->add_option("--lambda", lambda_points,
                        "explicit lambda values (lambda = 0 is DEGENERATE, exit 3)");
    add_output_flags(laplace, args);

    auto* hermite = app.add_subcommand("hermite", "Hermite basis and exit-location weights");
    add_instance_flags(hermite, args, false);
    add_output_flags(hermite, args);

    auto* ruin = app.add_subcommand("ruin", "ruin pseudo-probabilities H_0^-(x), H_0^+(x)");
    add_instance_flags(ruin, args, true);
    add_output_flags(ruin, args);

    auto* moments = app.add_subcommand("moments", "pseudo-moment E_x[(X_tau)^p]");
    add_instance_flags(moments, args, true);
    moments->add_option("--p", moment_p, "moment order")->required();
    add_output_flags(moments, args);

    auto* density = app.add_subcommand("density", "exit-time density, cdf and survival table");
    add_instance_flags(density, args, true);
    density->add_option("--time-grid", args.time_grid, "lo:hi:count, linear");
    density->add_flag("--joint", with_joint, "include the signed joint columns I_k^+-");
    add_inversion_flags(density, args);
    add_output_flags(density, args);

    auto* survival = app.add_subcommand("survival", "P_x{a < min <= max < b at t}");
    add_instance_flags(survival, args, true);
    survival->add_option("--t", t_single, "single evaluation time");
    survival->add_option("--time-grid", args.time_grid, "lo:hi:count, linear");
    add_inversion_flags(survival, args);
    add_output_flags(survival, args);

    auto* verify = app.add_subcommand("verify", "run the built-in verification suites");
    verify->add_option("--n", verify_orders, "restrict the order-parametrized suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitArguments;
    }

    try {
        if (*roots) return run_roots(args);
        if (*laplace) return run_laplace(args, lambda_points);
        if (*hermite) return run_hermite(args);
        if (*ruin) return run_ruin(args);
        if (*moments) return run_moments(args, moment_p);
        if (*density) return run_density(args, with_joint);
        if (*survival) return run_survival(args, t_single);
        if (*verify) return run_verify(verify_orders);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArguments;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitArguments;
}
