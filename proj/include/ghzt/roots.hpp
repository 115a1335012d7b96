#pragma once

#include <cmath>
#include <string>

#include "ghzt/core/errors.hpp"

namespace ghzt {

// Bisection for a sign change of f on [lo, hi]. Stops when the bracket is
// narrower than x_tol or f hits zero exactly.
template <class F>
double bisect_root(F&& f, double lo, double hi, double x_tol, int max_iter = 400) {
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0))
        throw NumericalError("bisect_root: no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    for (int it = 0; it < max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= x_tol || mid == lo || mid == hi) return mid;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    throw NumericalError("bisect_root: iteration limit reached");
}

// Locates where a predicate switches from true (at lo) to false (at hi).
// For measures clamped by max{0, .}, use `measure(p) > 0` as the predicate:
// the result is the infimum of the zero set.
template <class Pred>
double bisect_transition(Pred&& holds, double lo, double hi, double x_tol, int max_iter = 400) {
    if (!holds(lo) || holds(hi))
        throw NumericalError("bisect_transition: predicate does not change on [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
    for (int it = 0; it < max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= x_tol || mid == lo || mid == hi) return mid;
        if (holds(mid))
            lo = mid;
        else
            hi = mid;
    }
    throw NumericalError("bisect_transition: iteration limit reached");
}

}  // namespace ghzt
