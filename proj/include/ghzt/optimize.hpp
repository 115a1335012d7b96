#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace ghzt {

struct NelderMeadOptions {
    double initial_step = 0.2;
    double f_tol = 1e-13;   // spread of simplex values
    double x_tol = 1e-10;   // simplex diameter
    int max_evaluations = 4000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value;
    int evaluations;
};

// Downhill simplex maximization with the usual coefficients
// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
template <class F>
NelderMeadResult nelder_mead_maximize(F&& f, std::vector<double> start, const NelderMeadOptions& opt = {}) {
    const std::size_t n = start.size();
    std::vector<std::vector<double>> pts(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opt.initial_step;
    std::vector<double> vals(n + 1);
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };
    for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

    std::vector<std::size_t> order(n + 1);
    auto combine = [&](const std::vector<double>& centroid, const std::vector<double>& worst, double t) {
        std::vector<double> out(n);
        for (std::size_t k = 0; k < n; ++k) out[k] = centroid[k] + t * (worst[k] - centroid[k]);
        return out;
    };

    while (evals < opt.max_evaluations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
        const std::size_t best = order.front(), worst = order.back(), second_worst = order[n - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t k = 0; k < n; ++k) diameter = std::max(diameter, std::abs(pts[i][k] - pts[best][k]));
        if (vals[best] - vals[worst] <= opt.f_tol && diameter <= opt.x_tol) break;
        if (diameter <= 1e-15) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i)
            if (i != worst)
                for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / static_cast<double>(n);

        const auto reflected = combine(centroid, pts[worst], -1.0);
        const double f_reflected = eval(reflected);
        if (f_reflected > vals[best]) {
            const auto expanded = combine(centroid, pts[worst], -2.0);
            const double f_expanded = eval(expanded);
            if (f_expanded > f_reflected) {
                pts[worst] = expanded;
                vals[worst] = f_expanded;
            } else {
                pts[worst] = reflected;
                vals[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected > vals[second_worst]) {
            pts[worst] = reflected;
            vals[worst] = f_reflected;
            continue;
        }
        const bool outside = f_reflected > vals[worst];
        const auto contracted = combine(centroid, pts[worst], outside ? -0.5 : 0.5);
        const double f_contracted = eval(contracted);
        if (f_contracted > std::max(vals[worst], outside ? f_reflected : vals[worst])) {
            pts[worst] = contracted;
            vals[worst] = f_contracted;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < n; ++k) pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
            vals[i] = eval(pts[i]);
        }
    }
    const auto it = std::max_element(vals.begin(), vals.end());
    const auto idx = static_cast<std::size_t>(it - vals.begin());
    return {pts[idx], *it, evals};
}

}  // namespace ghzt
