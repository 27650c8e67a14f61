#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace shockvol {

struct SimplexOptions {
    double initial_step = 0.5;
    double tolerance = 1e-6;  ///< stop once every vertex is within this distance of the best
    std::size_t max_iterations = 2000;
};

struct SimplexResult {
    std::vector<double> x;
    double value;
    std::size_t iterations;
    std::size_t evaluations;
    bool converged;
};

/// Nelder-Mead downhill simplex (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
/// Non-finite objective values are treated as +infinity.
inline SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                                 std::vector<double> start, const SimplexOptions& opt = {}) {
    const std::size_t n = start.size();
    std::size_t evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        const double v = objective(x);
        return std::isfinite(v) ? v : HUGE_VAL;
    };

    std::vector<std::vector<double>> pts(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opt.initial_step;
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::vector<std::vector<double>> p2(n + 1);
        std::vector<double> v2(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            p2[k] = pts[order[k]];
            v2[k] = vals[order[k]];
        }
        pts.swap(p2);
        vals.swap(v2);
    };
    auto diameter = [&] {
        double d = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += (pts[k][i] - pts[0][i]) * (pts[k][i] - pts[0][i]);
            d = std::max(d, std::sqrt(s));
        }
        return d;
    };
    auto along = [&](const std::vector<double>& centroid, const std::vector<double>& worst, double coeff) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = centroid[i] + coeff * (worst[i] - centroid[i]);
        return x;
    };

    std::size_t iter = 0;
    sort_simplex();
    bool converged = diameter() < opt.tolerance;
    while (!converged && iter < opt.max_iterations) {
        ++iter;
        std::vector<double> centroid(n, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += pts[k][i] / static_cast<double>(n);

        const std::vector<double> xr = along(centroid, pts[n], -1.0);
        const double fr = eval(xr);
        if (fr < vals[0]) {
            const std::vector<double> xe = along(centroid, pts[n], -2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
        } else if (fr < vals[n - 1]) {
            pts[n] = xr;
            vals[n] = fr;
        } else {
            const bool outside = fr < vals[n];
            const std::vector<double> xc = along(centroid, pts[n], outside ? -0.5 : 0.5);
            const double fc = eval(xc);
            if (fc < (outside ? fr : vals[n])) {
                pts[n] = xc;
                vals[n] = fc;
            } else {
                for (std::size_t k = 1; k <= n; ++k) {
                    for (std::size_t i = 0; i < n; ++i) pts[k][i] = pts[0][i] + 0.5 * (pts[k][i] - pts[0][i]);
                    vals[k] = eval(pts[k]);
                }
            }
        }
        sort_simplex();
        converged = diameter() < opt.tolerance;
    }
    return {pts[0], vals[0], iter, evals, converged};
}

}  // namespace shockvol
