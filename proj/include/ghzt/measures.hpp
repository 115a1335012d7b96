#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ghzt/core/circuit.hpp"
#include "ghzt/core/eigen.hpp"
#include "ghzt/core/state.hpp"
#include "ghzt/ghz_symmetric.hpp"
#include "ghzt/roots.hpp"

namespace ghzt {

// Wootters concurrence max{0, l1 - l2 - l3 - l4}, where the l_i are the
// square roots of the spectrum of sqrt(rho) rho~ sqrt(rho). They are
// obtained directly as the singular values of A = sqrt(rho) Y sqrt(rho)^*
// (Y = sigma_y (x) sigma_y), read off the Hermitian dilation [[0, A], [A^dag, 0]];
// this avoids taking square roots of rounding-level eigenvalues.
inline double concurrence(const DensityMatrix& rho, const Tolerances& tol = {}) {
    detail::require(rho.n_qubits() == 2, "concurrence: expected a two-qubit state");
    const Matrix sqrt_rho = hermitian_function(rho.matrix(), [](double v) { return std::sqrt(std::max(v, 0.0)); }, tol);
    const Matrix yy = kron(gates::y(), gates::y());
    const Matrix a = sqrt_rho * yy * sqrt_rho.conjugate();

    Matrix dilation(8, 8);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            dilation(i, 4 + j) = a(i, j);
            dilation(4 + j, i) = std::conj(a(i, j));
        }
    const auto sv = eigenvalues_hermitian(dilation.hermitian_part(), tol);  // s1..s4, then -s4..-s1
    const double c = sv[0] - sv[1] - sv[2] - sv[3];
    return std::clamp(c, 0.0, 1.0);
}

// Sum of |negative eigenvalues| of the partial transpose over `cut`.
inline double negativity_partial_transpose(const DensityMatrix& rho, std::vector<Qubit> cut, const Tolerances& tol = {}) {
    detail::require(!cut.empty() && cut.size() < rho.n_qubits(), "negativity_partial_transpose: cut must be a proper, non-empty subset");
    detail::require_qubits(cut, rho.n_qubits(), "negativity_partial_transpose");
    const auto values = eigenvalues_hermitian(partial_transpose(rho.matrix(), cut), tol);
    double s = 0.0;
    for (const double v : values)
        if (v < 0.0) s -= v;
    return s;
}

inline double negativity_closed_form(const GhzCoords& c, const Tolerances& tol = {}) {
    require_physical(c, "negativity_closed_form", tol);
    return std::max(0.0, std::abs(c.x) + c.y / (2.0 * kSqrt3) - 0.125);
}

inline double gme_concurrence(const GhzCoords& c, const Tolerances& tol = {}) {
    require_physical(c, "gme_concurrence", tol);
    return std::max(0.0, 2.0 * std::abs(c.x) + kSqrt3 * c.y - 0.75);
}

// Point of the GHZ-W line hit by the ray from the GHZ+ vertex through
// (|x|, y), found by bisection on v of the cross product between the two
// directions. Used by three_tangle.
inline GhzCoords ghz_w_intersection(const GhzCoords& c, double v_tol = 1e-15) {
    const double x = std::abs(c.x);
    const double dx = x - kGhzPlusVertex.x;
    const double dy = c.y - kGhzPlusVertex.y;
    auto cross = [&](double v) {
        const auto w = ghz_w_line(v);
        return (w.x - kGhzPlusVertex.x) * dy - (w.y - kGhzPlusVertex.y) * dx;
    };
    // cross(0) = -dy/2 >= 0 inside the triangle; cross(1) <= 0 up to the
    // right edge, which contains the v = 1 end of the line.
    if (cross(0.0) <= 0.0) return ghz_w_line(0.0);
    if (cross(1.0) >= 0.0) return ghz_w_line(1.0);
    return ghz_w_line(bisect_root(cross, 0.0, 1.0, v_tol));
}

inline double three_tangle(const GhzCoords& c, const Tolerances& tol = {}) {
    require_physical(c, "three_tangle", tol);
    const double x = std::abs(c.x);
    if (std::hypot(x - kGhzPlusVertex.x, c.y - kGhzPlusVertex.y) <= 1e-15) return 1.0;
    const auto w = ghz_w_intersection(c);
    if (x <= w.x) return 0.0;
    return std::clamp((x - w.x) / (0.5 - w.x), 0.0, 1.0);
}

inline double three_tangle_lower_bound_depolarized(double p) {
    detail::require(p >= 0.0 && p <= 1.0, "three_tangle_lower_bound_depolarized: p must lie in [0, 1]");
    return std::max(0.0, (7.0 - 54.0 * p + 39.0 * p * p - 8.0 * p * p * p) / 7.0);
}

inline double localizable_concurrence_closed_form(const GhzCoords& c, const Tolerances& tol = {}) {
    require_physical(c, "localizable_concurrence_closed_form", tol);
    return 2.0 * std::max(0.0, std::abs(c.x) + c.y / kSqrt3 - 0.25);
}

}  // namespace ghzt
