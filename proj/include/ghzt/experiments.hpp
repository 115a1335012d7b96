#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ghzt/classification.hpp"
#include "ghzt/localizable.hpp"
#include "ghzt/measures.hpp"
#include "ghzt/noise.hpp"
#include "ghzt/roots.hpp"
#include "ghzt/teleport.hpp"

namespace ghzt {

struct SweepRecord {
    double p;
    double x;
    double y;
    double tau3;
    double tau3_lower_bound;
    double gme;
    double negativity;
    double localizable_concurrence;
    double average_fidelity;
};

inline SweepRecord depolarizing_record(double p, const Tolerances& tol = {}) {
    const GhzCoords c = depolarizing_path(p);
    return {p,
            c.x,
            c.y,
            three_tangle(c, tol),
            three_tangle_lower_bound_depolarized(p),
            gme_concurrence(c, tol),
            negativity_closed_form(c, tol),
            localizable_concurrence_closed_form(c, tol),
            average_fidelity(c, tol)};
}

// One record per grid point, sorted by p.
inline std::vector<SweepRecord> sweep_depolarizing(std::vector<double> grid, const Tolerances& tol = {}) {
    for (const double p : grid) detail::require(p >= 0.0 && p <= 1.0, "sweep_depolarizing: grid points must lie in [0, 1]");
    std::sort(grid.begin(), grid.end());
    std::vector<SweepRecord> out;
    out.reserve(grid.size());
    for (const double p : grid) out.push_back(depolarizing_record(p, tol));
    return out;
}

// n evenly spaced points on [0, 1], endpoints included.
inline std::vector<double> uniform_grid(std::size_t n) {
    detail::require(n >= 2, "uniform_grid: need at least two points");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

struct ThresholdReport {
    std::string measure;
    double p_star;
    double fidelity_at_root;
    std::optional<double> p_star_exact;  // tau3 only: root of the geometric three-tangle
};

// Where each measure first vanishes along the depolarizing path. Measures
// are clamped at zero, so each root is the left end of the zero set.
inline std::vector<ThresholdReport> find_thresholds(double p_tol = 1e-13, const Tolerances& tol = {}) {
    auto root = [&](auto&& measure) {
        return bisect_transition([&](double p) { return measure(p) > 0.0; }, 0.0, 1.0, p_tol);
    };
    auto report = [&](std::string name, double p) {
        return ThresholdReport{std::move(name), p, average_fidelity(depolarizing_path(p), tol), std::nullopt};
    };
    auto along = [&](auto&& f) { return [&tol, f](double p) { return f(depolarizing_path(p), tol); }; };

    std::vector<ThresholdReport> out;
    out.push_back(report("tau3", root([](double p) { return three_tangle_lower_bound_depolarized(p); })));
    out.back().p_star_exact = root(along([](const GhzCoords& c, const Tolerances& t) { return three_tangle(c, t); }));
    out.push_back(report("gme", root(along([](const GhzCoords& c, const Tolerances& t) { return gme_concurrence(c, t); }))));
    out.push_back(report(
        "c_l", root(along([](const GhzCoords& c, const Tolerances& t) { return localizable_concurrence_closed_form(c, t); }))));
    out.push_back(
        report("negativity", root(along([](const GhzCoords& c, const Tolerances& t) { return negativity_closed_form(c, t); }))));
    return out;
}

struct TriangleCell {
    double x;
    double y;
    bool physical;
    std::optional<EntanglementClass> klass;  // set for physical points only
    bool c_l_positive;
};

// resolution x resolution grid over the bounding box of the triangle,
// rows ordered by y then x.
inline std::vector<TriangleCell> triangle_map(std::size_t resolution, const Tolerances& tol = {}) {
    detail::require(resolution >= 2, "triangle_map: resolution must be at least 2");
    const double x0 = kGhzMinusVertex.x, x1 = kGhzPlusVertex.x;
    const double y0 = kBottomVertex.y, y1 = kGhzPlusVertex.y;
    const double last = static_cast<double>(resolution - 1);
    std::vector<TriangleCell> out;
    out.reserve(resolution * resolution);
    for (std::size_t j = 0; j < resolution; ++j)
        for (std::size_t i = 0; i < resolution; ++i) {
            // Pin the end points so the vertices are hit exactly.
            const double x = i + 1 == resolution ? x1 : x0 + (x1 - x0) * static_cast<double>(i) / last;
            const double y = j + 1 == resolution ? y1 : y0 + (y1 - y0) * static_cast<double>(j) / last;
            TriangleCell cell{x, y, is_physical({x, y}, tol), std::nullopt, false};
            if (cell.physical) {
                cell.klass = classify({x, y}, tol);
                cell.c_l_positive = localizable_concurrence_closed_form({x, y}, tol) > tol.class_boundary;
            }
            out.push_back(cell);
        }
    return out;
}

namespace detail {

// 53 random bits in [0, 1); unlike std::uniform_real_distribution this is
// the same on every standard library.
inline double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

// Uniform sample of the physical triangle by rejection from its bounding box.
inline GhzCoords sample_triangle(std::mt19937_64& rng, const Tolerances& tol = {}) {
    for (;;) {
        const GhzCoords c{kGhzMinusVertex.x + (kGhzPlusVertex.x - kGhzMinusVertex.x) * detail::unit_double(rng),
                          kBottomVertex.y + (kGhzPlusVertex.y - kBottomVertex.y) * detail::unit_double(rng)};
        if (is_physical(c, tol)) return c;
    }
}

struct Proposition1Sample {
    GhzCoords coords;
    double c_l;
    double lower;
    double upper;
    double fidelity;
    double violation;  // how far the fidelity leaves [lower, upper]; 0 inside
};

struct Proposition1Report {
    std::vector<Proposition1Sample> samples;
    double max_violation = 0.0;
    std::size_t violations = 0;  // samples violating by more than the tolerance
};

// Simulates teleport_ghz on sampled GHZ-symmetric channels and checks the
// fidelity bounds in terms of the localizable concurrence.
inline Proposition1Report verify_proposition1(std::size_t samples, std::uint64_t seed, double violation_tol = 1e-10,
                                              const Tolerances& tol = {}) {
    detail::require(samples >= 1, "verify_proposition1: need at least one sample");
    std::mt19937_64 rng(seed);
    Proposition1Report report;
    for (std::size_t s = 0; s < samples; ++s) {
        const GhzCoords c = sample_triangle(rng, tol);
        const double cl = localizable_concurrence_closed_form(c, tol);
        const auto bounds = proposition1_bounds(std::min(cl, 1.0));
        const double f = simulated_average_fidelity(ghz_symmetric_state(c, tol), false, tol);
        const double v = std::max({0.0, bounds.lower - f, f - bounds.upper});
        report.samples.push_back({c, cl, bounds.lower, bounds.upper, f, v});
        report.max_violation = std::max(report.max_violation, v);
        if (v > violation_tol) ++report.violations;
    }
    return report;
}

}  // namespace ghzt
