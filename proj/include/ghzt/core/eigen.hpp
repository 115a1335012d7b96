#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ghzt/core/errors.hpp"
#include "ghzt/core/matrix.hpp"
#include "ghzt/core/tolerances.hpp"

namespace ghzt {

struct EigenDecomposition {
    std::vector<double> values;  // descending
    Matrix vectors;              // column k belongs to values[k]

    Matrix reconstruct() const {
        std::vector<Complex> d(values.begin(), values.end());
        return vectors * Matrix::diagonal(d) * vectors.adjoint();
    }
};

namespace detail {

inline double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace detail

// Cyclic complex Jacobi. Each (p,q) rotation first removes the phase of
// a_pq and then applies the real symmetric rotation that zeroes it.
inline EigenDecomposition eig_hermitian(const Matrix& m, const Tolerances& tol = {}) {
    detail::require(m.is_square(), "eig_hermitian: matrix is not square");
    detail::require(m.all_finite(), "eig_hermitian: non-finite entries");
    detail::require(m.hermiticity_defect() <= tol.eigen_input_hermitian,
                    "eig_hermitian: matrix is not Hermitian");

    const std::size_t n = m.rows();
    Matrix a = m.hermitian_part();
    Matrix v = Matrix::identity(n);
    const double scale = std::max(a.frobenius_norm(), 1e-300);
    constexpr int kMaxSweeps = 100;

    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        if (detail::off_diagonal_norm(a) <= tol.jacobi_off_diagonal * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                if (sweep > 3 && std::abs(app) + 100.0 * mag == std::abs(app) &&
                    std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * mag);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex phase = std::conj(apq) / mag;  // e^{-i arg a_pq}

                // J = diag(1, phase) * R, R = [[c, s], [-s, c]] in the (p,q) plane.
                const Complex jpp = c, jpq = s, jqp = -s * phase, jqq = c * phase;

                for (std::size_t k = 0; k < n; ++k) {  // A <- A J
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // A <- J^dag A
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {  // V <- V J
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    if (sweep == kMaxSweeps) throw NumericalError("eig_hermitian: Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EigenDecomposition out{std::vector<double>(n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

inline std::vector<double> eigenvalues_hermitian(const Matrix& m, const Tolerances& tol = {}) {
    return eig_hermitian(m, tol).values;
}

// f applied to the spectrum of a Hermitian matrix.
template <class F>
Matrix hermitian_function(const Matrix& m, F&& f, const Tolerances& tol = {}) {
    const auto e = eig_hermitian(m, tol);
    std::vector<Complex> d(e.values.size());
    std::transform(e.values.begin(), e.values.end(), d.begin(), [&](double x) { return Complex{f(x)}; });
    return e.vectors * Matrix::diagonal(d) * e.vectors.adjoint();
}

}  // namespace ghzt
