#pragma once

#include <cmath>
#include <numbers>

#include "ghzt/core/errors.hpp"
#include "ghzt/core/state.hpp"
#include "ghzt/core/tolerances.hpp"

namespace ghzt {

inline const double kSqrt3 = std::numbers::sqrt3;

// (x, y) coordinates of a GHZ-symmetric three-qubit state.
struct GhzCoords {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const GhzCoords&, const GhzCoords&) = default;
};

inline PureState ghz_plus() {
    const double s = 1.0 / std::sqrt(2.0);
    return PureState({s, 0, 0, 0, 0, 0, 0, s});
}

inline PureState ghz_minus() {
    const double s = 1.0 / std::sqrt(2.0);
    return PureState({s, 0, 0, 0, 0, 0, 0, -s});
}

// The three eigenvalue families of rho^GS(x, y): weight on |GHZ+>, weight
// on |GHZ->, and the six-fold value on the remaining basis states.
struct GhzSpectrum {
    double plus;
    double minus;
    double rest;
};

inline GhzSpectrum ghz_spectrum(const GhzCoords& c) {
    const double rest = (kSqrt3 - 4.0 * c.y) / (8.0 * kSqrt3);
    return {2.0 * c.y / kSqrt3 + c.x + rest, 2.0 * c.y / kSqrt3 - c.x + rest, rest};
}

// Inside the triangle y <= sqrt3/4, y >= sqrt3 (8|x| - 1) / 12.
inline bool is_physical(const GhzCoords& c, const Tolerances& tol = {}) {
    if (!std::isfinite(c.x) || !std::isfinite(c.y)) return false;
    const auto s = ghz_spectrum(c);
    return s.plus >= -tol.physical_coords && s.minus >= -tol.physical_coords && s.rest >= -tol.physical_coords;
}

inline void require_physical(const GhzCoords& c, const char* what, const Tolerances& tol = {}) {
    detail::require(is_physical(c, tol), std::string(what) + ": coordinates lie outside the physical triangle");
}

inline GhzCoords coords_of(const DensityMatrix& rho) {
    detail::require(rho.n_qubits() == 3, "coords_of: expected a three-qubit state");
    const double diag = rho(0, 0).real() + rho(7, 7).real();
    const double coherence = rho(0, 7).real() + rho(7, 0).real();
    const double f_plus = 0.5 * (diag + coherence);   // <GHZ+|rho|GHZ+>
    const double f_minus = 0.5 * (diag - coherence);  // <GHZ-|rho|GHZ->
    return {0.5 * (f_plus - f_minus), (f_plus + f_minus - 0.25) / kSqrt3};
}

inline DensityMatrix ghz_symmetric_state(const GhzCoords& c, const Tolerances& tol = {}) {
    require_physical(c, "ghz_symmetric_state", tol);
    const double rest = (kSqrt3 - 4.0 * c.y) / (8.0 * kSqrt3);
    const double w_plus = 2.0 * c.y / kSqrt3 + c.x;
    const double w_minus = 2.0 * c.y / kSqrt3 - c.x;
    Matrix m = Matrix::identity(8) * Complex{rest};
    // w+ |GHZ+><GHZ+| + w- |GHZ-><GHZ-| only touches the {000, 111} corners.
    m(0, 0) += 0.5 * (w_plus + w_minus);
    m(7, 7) += 0.5 * (w_plus + w_minus);
    m(0, 7) += 0.5 * (w_plus - w_minus);
    m(7, 0) += 0.5 * (w_plus - w_minus);
    return DensityMatrix(m, tol);
}

// Projection onto the GHZ-symmetric family through the coordinate map.
// Any density matrix maps to physical coordinates: the reconstructed
// |GHZ+-> weights equal the input overlaps.
inline DensityMatrix ghz_twirl(const DensityMatrix& rho, const Tolerances& tol = {}) {
    return ghz_symmetric_state(coords_of(rho), tol);
}

// Boundary between the GHZ and W classes, v in [-1, 1].
inline GhzCoords ghz_w_line(double v) {
    detail::require(v >= -1.0 && v <= 1.0, "ghz_w_line: v must lie in [-1, 1]");
    const double v2 = v * v;
    return {(v2 * v2 * v + 8.0 * v2 * v) / (8.0 * (4.0 - v2)), kSqrt3 / 4.0 * (4.0 - v2 - v2 * v2) / (4.0 - v2)};
}

inline constexpr GhzCoords kGhzPlusVertex{0.5, std::numbers::sqrt3 / 4.0};
inline constexpr GhzCoords kGhzMinusVertex{-0.5, std::numbers::sqrt3 / 4.0};
inline constexpr GhzCoords kBottomVertex{0.0, -1.0 / (4.0 * std::numbers::sqrt3)};

}  // namespace ghzt
