#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pseudoexit/matrix.hpp"
#include "pseudoexit/process.hpp"

namespace pseudoexit {

enum class Side { minus, plus };

// ---------------------------------------------------------------------------
// Determinant engine, templated on the working real type so the same code
// serves the double path and the extended-precision inversion path.
//
// The base matrix is 2N x 2N with rows
//     r = 0..N-1   : theta_l^r exp(mu theta_l a)
//     r = N..2N-1  : theta_l^(r-N) exp(mu theta_l b)
// where mu = lambda^(1/(2N)) (real positive root for lambda >= 0, principal
// branch for complex lambda). Delta_k^- replaces the power-k row of the
// a-block by the x-row [exp(mu theta_l x)], Delta_k^+ the power-k row of the
// b-block. The j-th x-derivative multiplies the x-row entrywise by
// mu^j theta_l^j; at j = 2N that is the scalar kappa lambda, which is the
// boundary-value-problem ODE in determinant form.
// ---------------------------------------------------------------------------
template <class R>
class DeltaEngine {
public:
    using C = complex_of_t<R>;

    DeltaEngine(int N, const R& a, const R& b)
        : N_(N), a_(a), b_(b), theta_(unit_roots<R>(N)) {
        if (N < 1) throw std::invalid_argument("DeltaEngine: N must be >= 1");
    }

    int order() const { return N_; }
    const R& lower() const { return a_; }
    const R& upper() const { return b_; }
    const std::vector<C>& theta() const { return theta_; }

    C root_of_lambda(const C& lambda) const {
        using std::pow;
        if (real(lambda) == 0 && imag(lambda) == 0) return C{};
        return pow(lambda, R(1) / R(2 * N_));
    }

    // The a-block and b-block rows for one lambda; every determinant at that
    // lambda reuses them.
    struct Basis {
        C mu;
        std::vector<std::vector<Scaled<C>>> rows;
    };

    Basis prepare(const C& lambda) const {
        C mu = root_of_lambda(lambda);
        return {mu, base_rows(mu)};
    }

    Scaled<C> delta(const Basis& basis) const {
        return det_scaled(assemble(basis.rows, -1, nullptr));
    }

    Scaled<C> delta_k(const Basis& basis, const R& x, Side side, int k) const {
        check_k(k);
        auto xr = x_row(basis.mu, x, 0);
        int pos = (side == Side::minus) ? k : N_ + k;
        return det_scaled(assemble(basis.rows, pos, &xr));
    }

    // d^j/dx^j Delta_k^side(lambda; x), analytic (no finite differences).
    Scaled<C> derivative(const Basis& basis, const R& x, Side side, int k, int j) const {
        check_k(k);
        if (j < 0 || j > 2 * N_) throw std::invalid_argument("derivative order out of range");
        auto xr = x_row(basis.mu, x, j);
        int pos = (side == Side::minus) ? k : N_ + k;
        return det_scaled(assemble(basis.rows, pos, &xr));
    }

    Scaled<C> delta(const C& lambda) const { return delta(prepare(lambda)); }

    Scaled<C> delta_k(const C& lambda, const R& x, Side side, int k) const {
        return delta_k(prepare(lambda), x, side, k);
    }

    Scaled<C> derivative(const C& lambda, const R& x, Side side, int k, int j) const {
        return derivative(prepare(lambda), x, side, k, j);
    }

    // All 2N+1 determinants at once.
    struct Values {
        Scaled<C> delta;
        std::vector<Scaled<C>> minus, plus;
    };

    Values eval(const Basis& basis, const R& x) const {
        auto xr = x_row(basis.mu, x, 0);
        Values v;
        v.delta = det_scaled(assemble(basis.rows, -1, nullptr));
        v.minus.resize(std::size_t(N_));
        v.plus.resize(std::size_t(N_));
        for (int k = 0; k < N_; ++k) {
            v.minus[std::size_t(k)] = det_scaled(assemble(basis.rows, k, &xr));
            v.plus[std::size_t(k)] = det_scaled(assemble(basis.rows, N_ + k, &xr));
        }
        return v;
    }

    Values eval(const C& lambda, const R& x) const { return eval(prepare(lambda), x); }

    // Sum over rows of the leading entry log-magnitude: the natural log scale
    // of the determinant's term products. log(scale) - log|Delta| measures the
    // cancellation the elimination has to resolve, which grows with N even at
    // moderate lambda (the columns become nearly dependent), and decides when
    // the double engine must hand over to the extended-precision one.
    R scale_log(const Basis& basis) const {
        R total{};
        for (const auto& row : basis.rows) {
            bool any = false;
            R lead{};
            for (const auto& s : row) {
                if (s.is_zero()) continue;
                R la = s.log_abs();
                if (!any || la > lead) lead = la;
                any = true;
            }
            if (any) total += lead;
        }
        return total;
    }

private:
    int N_;
    R a_, b_;
    std::vector<C> theta_;

    void check_k(int k) const {
        if (k < 0 || k >= N_) throw std::invalid_argument("k out of range [0, N)");
    }

    // coef * exp(mu_theta * z) with the magnitude kept in the log slot
    static Scaled<C> entry(const C& coef, const C& mu_theta, const R& z) {
        return normalized(coef * polar_unit(imag(mu_theta) * z), real(mu_theta) * z);
    }

    std::vector<std::vector<Scaled<C>>> base_rows(const C& mu) const {
        const int n2 = 2 * N_;
        std::vector<std::vector<Scaled<C>>> rows(static_cast<std::size_t>(n2),
                                                 std::vector<Scaled<C>>(static_cast<std::size_t>(n2)));
        for (int l = 0; l < n2; ++l) {
            const C& th = theta_[std::size_t(l)];
            C mu_th = mu * th;
            C p = C(R(1));
            for (int r = 0; r < N_; ++r) {
                rows[std::size_t(r)][std::size_t(l)] = entry(p, mu_th, a_);
                rows[std::size_t(N_ + r)][std::size_t(l)] = entry(p, mu_th, b_);
                p = p * th;
            }
        }
        return rows;
    }

    std::vector<Scaled<C>> x_row(const C& mu, const R& x, int j) const {
        const int n2 = 2 * N_;
        std::vector<Scaled<C>> row(static_cast<std::size_t>(n2));
        for (int l = 0; l < n2; ++l) {
            const C& th = theta_[std::size_t(l)];
            C coef = C(R(1));
            for (int i = 0; i < j; ++i) coef *= mu * th;
            row[std::size_t(l)] = entry(coef, mu * th, x);
        }
        return row;
    }

    ScaledMatrix<C> assemble(const std::vector<std::vector<Scaled<C>>>& rows, int replace,
                             const std::vector<Scaled<C>>* xr) const {
        ScaledMatrix<C> m(2 * N_);
        for (int r = 0; r < 2 * N_; ++r)
            m.set_row(r, (r == replace) ? *xr : rows[std::size_t(r)]);
        return m;
    }
};

// ---------------------------------------------------------------------------
// Public double-precision interface
// ---------------------------------------------------------------------------

struct LaplaceEvaluation {
    double lambda = 0.0;
    double x = 0.0;
    ScaledComplex delta;
    std::vector<ScaledComplex> delta_minus, delta_plus;      // k = 0..N-1
    std::vector<std::complex<double>> ratio_minus, ratio_plus;
    bool degenerate = false;  // Delta(lambda) == 0; ratios undefined
};

// Boundary data phi^(k)(a), phi^(k)(b), k = 0..N-1.
struct BoundaryData {
    std::vector<double> at_a, at_b;
};

// The 2N x 2N base matrix itself, in plain complex entries (overflows for
// extreme lambda*(b-a); the scaled path in eval() does not).
ComplexMatrix build_delta_matrix(const ProcessParams& params, const RootSystem& roots,
                                 double lambda);

LaplaceEvaluation eval(const ProcessParams& params, const RootSystem& roots, double lambda,
                       double x);

ScaledComplex derivative_delta(const ProcessParams& params, const RootSystem& roots,
                               double lambda, double x, Side side, int k, int order);

// Feynman-Kac functional: sum_k lambda^(-k/2N) [ratio_minus_k phi^(k)(a) +
// ratio_plus_k phi^(k)(b)]. Empty optional when Delta(lambda) = 0.
std::optional<double> feynman_kac(const ProcessParams& params, const RootSystem& roots,
                                  double lambda, double x, const BoundaryData& bd);

// Lagrange coefficients alpha[k][l] over the negative-real-part roots
// theta_1..theta_N: sum_k alpha[k][l] z^k = prod_{m != l} (z - theta_m) /
// (theta_l - theta_m). These are the b -> infinity limit coefficients of the
// ratios Delta_k^- / Delta.
struct LimitCoefficients {
    int N = 0;
    std::vector<std::vector<std::complex<double>>> alpha;  // [k][l], l 0-based

    std::complex<double> at(int k, int l) const {
        return alpha[std::size_t(k)][std::size_t(l)];
    }
};

LimitCoefficients limit_coefficients(const RootSystem& roots);

// Direct route through the boundary linear system: solves for the 2N
// coefficients alpha_l of Phi(x) = sum_l alpha_l exp(mu theta_l x).
std::vector<std::complex<double>> solve_boundary_system(const ProcessParams& params,
                                                        const RootSystem& roots, double lambda,
                                                        const BoundaryData& bd);

double evaluate_boundary_solution(const ProcessParams& params, const RootSystem& roots,
                                  double lambda, double x,
                                  const std::vector<std::complex<double>>& coeffs);

// ---------------------------------------------------------------------------
// Laplace transforms of the exit-time quantities, evaluated at complex
// lambda for the inversion contours.
//
//   density  : (Delta_0^- + Delta_0^+) / Delta          ~ exit-time density I
//   cdf      : density / lambda                          ~ J(t) = P{tau <= t}
//   joint    : lambda^(-k/2N) Delta_k^side / Delta       ~ I_k^side
//   survival : (Delta - Delta_0^- - Delta_0^+)/(lambda Delta)
// ---------------------------------------------------------------------------
enum class TransformKind { density, cdf, joint, survival };

template <class R>
complex_of_t<R> exit_transform_value(TransformKind kind, const DeltaEngine<R>& eng,
                                     const typename DeltaEngine<R>::Basis& basis, const R& x,
                                     int k, Side side, const complex_of_t<R>& lambda) {
    using C = complex_of_t<R>;
    using std::pow;
    switch (kind) {
        case TransformKind::joint: {
            Scaled<C> num = eng.delta_k(basis, x, side, k);
            Scaled<C> den = eng.delta(basis);
            C pref = (k == 0) ? C(R(1)) : pow(lambda, -R(k) / R(2 * eng.order()));
            return (num / den).value() * pref;
        }
        case TransformKind::density:
        case TransformKind::cdf: {
            Scaled<C> den = eng.delta(basis);
            Scaled<C> num = eng.delta_k(basis, x, Side::minus, 0) +
                            eng.delta_k(basis, x, Side::plus, 0);
            C v = (num / den).value();
            return kind == TransformKind::density ? v : v / lambda;
        }
        case TransformKind::survival: {
            Scaled<C> den = eng.delta(basis);
            Scaled<C> num = den - eng.delta_k(basis, x, Side::minus, 0) -
                            eng.delta_k(basis, x, Side::plus, 0);
            return (num / den).value() / lambda;
        }
    }
    throw std::logic_error("unreachable");
}

template <class R>
complex_of_t<R> exit_transform_value(TransformKind kind, const DeltaEngine<R>& eng, const R& x,
                                     int k, Side side, const complex_of_t<R>& lambda) {
    return exit_transform_value(kind, eng, eng.prepare(lambda), x, k, side, lambda);
}

// Decimal digits the double determinant pipeline loses to cancellation at
// this lambda; above ~12 the 2N+1 family needs the extended-precision engine.
double lost_digits(const DeltaEngine<double>& eng, const DeltaEngine<double>::Basis& basis,
                   const ScaledComplex& delta);

// Double-precision transform evaluation that re-runs itself in extended
// precision when the cancellation estimate says double is exhausted (large N,
// or small lambda on wide intervals).
std::complex<double> exit_transform_checked(TransformKind kind, const DeltaEngine<double>& eng,
                                            double x, int k, Side side,
                                            std::complex<double> lambda);

}  // namespace pseudoexit
