#pragma once

#include <utility>

#include "pseudoexit/rational.hpp"

namespace pseudoexit {

// The two-point Hermite interpolating families H_k^-, H_k^+ of degree 2N-1 on
// [a, b], built in exact rational arithmetic:
//   (H_k^-)^(l)(a) = delta_kl,  (H_k^-)^(l)(b) = 0,
//   (H_k^+)^(l)(b) = delta_kl,  (H_k^+)^(l)(a) = 0,     k, l = 0..N-1.
// H_0^- and H_0^+ are the lower/upper ruin pseudo-probabilities, and the
// whole family encodes the exit-location pseudo-law at lambda = 0.
struct HermiteBasis {
    int N = 0;
    Rational a, b;
    std::vector<RationalPoly> h_minus, h_plus;  // k = 0..N-1
};

HermiteBasis build_hermite_basis(int N, const Rational& a, const Rational& b);

// Exit-location weights at a starting point x: the coefficient vector of the
// multipole expansion (weights on delta_a^(k) resp. delta_b^(k) up to the
// (-1)^k sign convention of distributional derivatives).
struct ExitLocationLaw {
    std::vector<Rational> weights_a, weights_b;  // H_k^-(x), H_k^+(x)
};

ExitLocationLaw exit_location_law(const HermiteBasis& basis, const Rational& x);

// (P{exit through a first}, P{exit through b first}) = (H_0^-(x), H_0^+(x)).
std::pair<Rational, Rational> ruin_probabilities(const HermiteBasis& basis, const Rational& x);

// E_x[P(X_tau)] = remainder of P modulo (x-a)^N (x-b)^N, evaluated at x.
Rational expected_exit_polynomial(const HermiteBasis& basis, const RationalPoly& p,
                                  const Rational& x);

// Coefficients c_0..c_p of the Euclidean quotient of x^(2N+p) by
// (x-a)^N (x-b)^N, from the closed binomial double sum.
std::vector<Rational> moment_quotient_coefficients(int N, const Rational& a, const Rational& b,
                                                   int p);

// (x-a)^N (x-b)^N expanded once per basis; exposed for the quotient tests.
RationalPoly boundary_annihilator(const HermiteBasis& basis);

// E_x[(X_tau - b)^p 1{upper exit first}]: p! H_p^+(x) for p <= N-1, and 0 for
// p >= N via the same remainder route (reduce (x-b)^p, then apply the b-side
// weights).
Rational overshoot_moment(const HermiteBasis& basis, int p, const Rational& x);

// Alternative closed form for H_0^-: (b-x)^N / (b-a)^(2N-1) *
// sum_m C(2N-1, m) (x-a)^m (b-x)^(N-1-m); an independent route used by tests.
Rational ruin_lower_binomial(int N, const Rational& a, const Rational& b, const Rational& x);

}  // namespace pseudoexit
