#include "pseudoexit/matrix.hpp"

#include <cmath>

namespace pseudoexit {

ScaledComplex det_scaled(const ComplexMatrix& m) {
    if (m.n == 0) return normalized(std::complex<double>(1.0));
    for (const auto& e : m.entries) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
            throw std::invalid_argument("det_scaled: non-finite matrix entry");
    }
    ScaledMatrix<std::complex<double>> s(m.n);
    std::vector<ScaledComplex> row(std::size_t(m.n));
    for (int r = 0; r < m.n; ++r) {
        for (int c = 0; c < m.n; ++c) row[std::size_t(c)] = normalized(m.at(r, c));
        s.set_row(r, row);
    }
    return det_scaled(std::move(s));
}

std::vector<std::complex<double>> solve_linear(ComplexMatrix a,
                                               std::vector<std::complex<double>> rhs) {
    const int n = a.n;
    if (int(rhs.size()) != n) throw std::invalid_argument("solve_linear: size mismatch");
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::norm(a.at(k, k));
        for (int r = k + 1; r < n; ++r) {
            double cand = std::norm(a.at(r, k));
            if (cand > best) { best = cand; piv = r; }
        }
        if (best == 0.0) throw std::runtime_error("solve_linear: singular system");
        if (piv != k) {
            for (int c = k; c < n; ++c) std::swap(a.at(k, c), a.at(piv, c));
            std::swap(rhs[std::size_t(k)], rhs[std::size_t(piv)]);
        }
        for (int r = k + 1; r < n; ++r) {
            std::complex<double> f = a.at(r, k) / a.at(k, k);
            if (f == 0.0) continue;
            for (int c = k + 1; c < n; ++c) a.at(r, c) -= f * a.at(k, c);
            rhs[std::size_t(r)] -= f * rhs[std::size_t(k)];
        }
    }
    std::vector<std::complex<double>> x(static_cast<std::size_t>(n));
    for (int r = n - 1; r >= 0; --r) {
        std::complex<double> acc = rhs[std::size_t(r)];
        for (int c = r + 1; c < n; ++c) acc -= a.at(r, c) * x[std::size_t(c)];
        x[std::size_t(r)] = acc / a.at(r, r);
    }
    return x;
}

}  // namespace pseudoexit
