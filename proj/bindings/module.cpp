#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pseudoexit/hermite.hpp"
#include "pseudoexit/inversion.hpp"
#include "pseudoexit/laplace.hpp"
#include "pseudoexit/verify.hpp"
#include "pseudoexit/version.hpp"

namespace py = pybind11;
using namespace pseudoexit;

namespace {

InversionConfig config_from(const std::string& method, int nodes, int digits,
                            std::vector<double> grid) {
    InversionConfig cfg;
    if (method == "gaver_stehfest" || method == "gs")
        cfg.method = InversionMethod::gaver_stehfest;
    else if (method == "euler" || method == "euler_bromwich")
        cfg.method = InversionMethod::euler_bromwich;
    else if (method != "talbot")
        throw std::invalid_argument("unknown method '" + method + "'");
    cfg.node_count = nodes;
    cfg.precision_digits = digits;
    cfg.time_grid = std::move(grid);
    return cfg;
}

Side side_from(const std::string& s) {
    if (s == "minus" || s == "-") return Side::minus;
    if (s == "plus" || s == "+") return Side::plus;
    throw std::invalid_argument("side must be 'minus' or 'plus'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exit-time and exit-location pseudo-distributions of pseudo-Brownian motion";
    m.attr("__version__") = PSEUDOEXIT_VERSION;

    m.def(
        "roots",
        [](int n) {
            RootSystem rs = compute_roots(ProcessParams(n, 0.0, 1.0));
            return rs.roots;
        },
        py::arg("n"), "The 2N unit roots theta_l of kappa, in index order.");

    m.def(
        "laplace_eval",
        [](int n, double a, double b, double lam, double x) {
            ProcessParams params(n, a, b);
            auto ev = eval(params, compute_roots(params), lam, x);
            py::dict out;
            out["degenerate"] = ev.degenerate;
            out["delta"] = ev.delta.value().real();
            out["log_abs_delta"] = ev.delta.is_zero() ? -HUGE_VAL : ev.delta.log_abs();
            std::vector<double> rm, rp;
            for (const auto& r : ev.ratio_minus) rm.push_back(r.real());
            for (const auto& r : ev.ratio_plus) rp.push_back(r.real());
            out["ratio_minus"] = rm;
            out["ratio_plus"] = rp;
            return out;
        },
        py::arg("n"), py::arg("a"), py::arg("b"), py::arg("lam"), py::arg("x"),
        "Delta(lambda) and the ratios Delta_k^+- / Delta at real lambda.");

    m.def(
        "hermite_coefficients",
        [](int n, const std::string& a, const std::string& b) {
            auto basis = build_hermite_basis(n, parse_rational(a), parse_rational(b));
            auto dump = [&](const std::vector<RationalPoly>& family) {
                std::vector<std::vector<std::string>> out;
                for (const auto& h : family) {
                    std::vector<std::string> coeffs;
                    for (int c = 0; c <= 2 * n - 1; ++c) coeffs.push_back(to_string(h.coefficient(c)));
                    out.push_back(std::move(coeffs));
                }
                return out;
            };
            return py::make_tuple(dump(basis.h_minus), dump(basis.h_plus));
        },
        py::arg("n"), py::arg("a"), py::arg("b"),
        "Exact ascending coefficients of H_k^- and H_k^+, as rational strings.");

    m.def(
        "ruin",
        [](int n, const std::string& a, const std::string& b, const std::string& x) {
            auto basis = build_hermite_basis(n, parse_rational(a), parse_rational(b));
            auto [lo, hi] = ruin_probabilities(basis, parse_rational(x));
            return py::make_tuple(to_string(lo), to_string(hi));
        },
        py::arg("n"), py::arg("a"), py::arg("b"), py::arg("x"),
        "(P{exit through a first}, P{exit through b first}) as rational strings.");

    m.def(
        "moment",
        [](int n, const std::string& a, const std::string& b, const std::string& x, int p) {
            auto basis = build_hermite_basis(n, parse_rational(a), parse_rational(b));
            std::vector<Rational> mono(std::size_t(p) + 1, Rational(0));
            mono.back() = 1;
            return to_string(expected_exit_polynomial(basis, RationalPoly(mono), parse_rational(x)));
        },
        py::arg("n"), py::arg("a"), py::arg("b"), py::arg("x"), py::arg("p"),
        "E_x[(X_tau)^p] as a rational string.");

    m.def(
        "overshoot_moment",
        [](int n, const std::string& a, const std::string& b, const std::string& x, int p) {
            auto basis = build_hermite_basis(n, parse_rational(a), parse_rational(b));
            return to_string(overshoot_moment(basis, p, parse_rational(x)));
        },
        py::arg("n"), py::arg("a"), py::arg("b"), py::arg("x"), py::arg("p"));

    m.def(
        "exit_density",
        [](int n, double a, double b, double x, std::vector<double> time_grid,
           const std::string& method, int nodes, int digits, bool joint) {
            ProcessParams params(n, a, b);
            auto cfg = config_from(method, nodes, digits, std::move(time_grid));
            DensityTable table =
                joint ? exit_joint_weights(params, x, cfg) : exit_time_density(params, x, cfg);
            py::dict out;
            out["t"] = table.t;
            out["density"] = table.density;
            out["cdf"] = table.cdf;
            out["survival"] = table.survival;
            if (joint) {
                out["joint_minus"] = table.joint_minus;
                out["joint_plus"] = table.joint_plus;
            }
            out["precision_loss"] = table.precision_loss;
            return out;
        },
        py::arg("n"), py::arg("a"), py::arg("b"), py::arg("x"),
        py::arg("time_grid") = std::vector<double>{}, py::arg("method") = "talbot",
        py::arg("nodes") = 32, py::arg("digits") = 0, py::arg("joint") = false,
        "Inverted exit-time table: density I, cdf J, survival 1 - J.");

    m.def(
        "survival",
        [](int n, double a, double b, double x, double t, const std::string& method, int nodes,
           int digits) {
            ProcessParams params(n, a, b);
            return survival_probability(params, x, t, config_from(method, nodes, digits, {}))
                .value;
        },
        py::arg("n"), py::arg("a"), py::arg("b"), py::arg("x"), py::arg("t"),
        py::arg("method") = "talbot", py::arg("nodes") = 32, py::arg("digits") = 0);

    m.def(
        "joint_total_mass",
        [](int n, double a, double b, double x, int k, const std::string& side) {
            return joint_total_mass(ProcessParams(n, a, b), x, k, side_from(side));
        },
        py::arg("n"), py::arg("a"), py::arg("b"), py::arg("x"), py::arg("k"), py::arg("side"),
        "Total time-integral of I_k^side; equals H_k^side(x).");

    m.def(
        "verify",
        [](std::vector<int> restrict_n) {
            VerifyOptions opt;
            opt.restrict_n = std::move(restrict_n);
            auto results = run_verification(opt);
            return py::make_tuple(all_passed(results), format_report(results));
        },
        py::arg("restrict_n") = std::vector<int>{},
        "Run the verification suites; returns (all_passed, report).");
}
