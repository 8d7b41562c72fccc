#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pseudoexit/scaled.hpp"

namespace pseudoexit {

// Dense square complex matrix, row-major.
struct ComplexMatrix {
    int n = 0;
    std::vector<std::complex<double>> entries;

    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim) : n(dim), entries(std::size_t(dim) * dim) {}

    std::complex<double>& at(int r, int c) { return entries[std::size_t(r) * n + c]; }
    const std::complex<double>& at(int r, int c) const { return entries[std::size_t(r) * n + c]; }
};

// Square matrix with a per-row log scale factored out: row r of the
// represented matrix is exp(row_log[r]) times the stored row. Stored entries
// are kept at magnitude <= ~1 so the elimination never overflows.
template <class C>
struct ScaledMatrix {
    using real_type = typename C::value_type;

    int n = 0;
    std::vector<C> entries;
    std::vector<real_type> row_log;

    explicit ScaledMatrix(int dim = 0)
        : n(dim), entries(std::size_t(dim) * dim), row_log(dim) {}

    C& at(int r, int c) { return entries[std::size_t(r) * n + c]; }
    const C& at(int r, int c) const { return entries[std::size_t(r) * n + c]; }

    // Installs one row from scaled values, pulling the common magnitude out
    // into row_log. Entries exponentially smaller than the row maximum
    // underflow to zero, which is the right rounding.
    void set_row(int r, const std::vector<Scaled<C>>& row) {
        using std::exp;
        real_type lead{};
        bool any = false;
        for (const auto& s : row) {
            if (s.is_zero()) continue;
            real_type la = s.log_abs();
            if (!any || la > lead) lead = la;
            any = true;
        }
        row_log[r] = any ? lead : real_type{};
        for (int c = 0; c < n; ++c) {
            const auto& s = row[std::size_t(c)];
            at(r, c) = s.is_zero() ? C{} : s.mantissa * exp(s.log_scale - lead);
        }
    }
};

// Determinant by LU with partial pivoting; the pivot product is accumulated
// in scaled form so it cannot overflow. Exact 1x1/2x2 shortcuts. Singularity
// shows up only as a zero result, never as an error.
template <class C>
Scaled<C> det_scaled(ScaledMatrix<C> m) {
    using std::abs;
    using R = typename C::value_type;
    const int n = m.n;
    if (n == 0) return normalized(C(R(1)));

    R logsum{};
    for (int r = 0; r < n; ++r) logsum += m.row_log[r];

    if (n == 1) return normalized(m.at(0, 0), logsum);
    if (n == 2)
        return normalized(m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0), logsum);

    Scaled<C> det = normalized(C(R(1)), logsum);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        R best = norm(m.at(k, k));
        for (int r = k + 1; r < n; ++r) {
            R cand = norm(m.at(r, k));
            if (cand > best) { best = cand; piv = r; }
        }
        if (best == 0) return {};
        if (piv != k) {
            for (int c = k; c < n; ++c) std::swap(m.at(k, c), m.at(piv, c));
            det.mantissa = -det.mantissa;
        }
        det = det * normalized(m.at(k, k));
        for (int r = k + 1; r < n; ++r) {
            C f = m.at(r, k) / m.at(k, k);
            if (real(f) == 0 && imag(f) == 0) continue;
            for (int c = k + 1; c < n; ++c) m.at(r, c) -= f * m.at(k, c);
        }
    }
    return det;
}

// Determinant of a plain complex matrix. Rows are magnitude-normalized first;
// exact closed forms for n <= 2.
ScaledComplex det_scaled(const ComplexMatrix& m);

// Solves A x = rhs by Gaussian elimination with partial pivoting.
// Used for the direct (non-Cramer) route through the boundary linear system.
std::vector<std::complex<double>> solve_linear(ComplexMatrix a,
                                               std::vector<std::complex<double>> rhs);

}  // namespace pseudoexit
