#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "shockvol/error.hpp"

namespace shockvol {

/// b^p - a^p for 0 <= a <= b, without cancellation when b - a << a.
inline double pow_difference(double b, double a, double p) {
    if (a <= 0.0) return std::pow(b, p);
    return std::pow(a, p) * std::expm1(p * std::log1p((b - a) / a));
}

struct QuadratureConfig {
    double rel_tol = 1e-6;
    double abs_tol = 0.0;
    std::size_t max_subdivisions = 2000;

    static QuadratureConfig for_moment_constants() { return {1e-8, 0.0, 4000}; }
    static QuadratureConfig for_kernels() { return {1e-6, 0.0, 2000}; }
    /// Throws std::invalid_argument unless rel_tol is in (0, 1e-3].
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
    std::size_t subdivisions = 0;
};

namespace detail {

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel kronrod21(F& f, double a, double b) {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
    using Gauss = boost::math::quadrature::gauss<double, 10>;
    const auto& x = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double kronrod = f(center) * wk[0];
    double gauss = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double fsum = f(center + half * x[i]) + f(center - half * x[i]);
        kronrod += fsum * wk[i];
        if (i % 2 == 1) gauss += fsum * wg[i / 2];
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive 21-point Gauss-Kronrod on [a, b]: always bisects the panel with the
/// largest error estimate until the total error meets max(abs_tol, rel_tol * |value|).
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureConfig& cfg) {
    std::priority_queue<detail::Panel> panels;
    std::size_t evals = 21;
    detail::Panel first = detail::kronrod21(f, a, b);
    double value = first.value;
    double error = first.error;
    panels.push(first);
    std::size_t splits = 0;
    auto done = [&] { return error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value)); };
    while (!done()) {
        if (splits >= cfg.max_subdivisions) {
            std::ostringstream msg;
            msg << "quadrature on [" << a << ", " << b << "] did not converge: value " << value << ", error estimate "
                << error << " after " << splits << " subdivisions (" << evals << " evaluations)";
            throw NumericFailure(msg.str());
        }
        const detail::Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const detail::Panel left = detail::kronrod21(f, worst.a, mid);
        const detail::Panel right = detail::kronrod21(f, mid, worst.b);
        evals += 42;
        ++splits;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        if (!std::isfinite(value)) throw NumericFailure("quadrature produced a non-finite value");
    }
    // Re-sum to drop accumulated rounding from the running updates.
    double total = 0.0;
    double total_err = 0.0;
    while (!panels.empty()) {
        total += panels.top().value;
        total_err += panels.top().error;
        panels.pop();
    }
    return {total, total_err, evals, splits};
}

/// Integral of g(s) e^{-s} over [0, inf).
///
/// `singular_power` is p > -1 with g(s) ~ s^p as s -> 0. The unit interval is mapped by
/// s = u^{3/(p+1)}, so g(s) ds ~ u^2 du near the origin and any milder power terms in g
/// become smooth as well; the tail uses s = 1 + w / (1 - w).
template <class G>
QuadratureResult integrate_exp_weighted(G&& g, double singular_power, const QuadratureConfig& cfg) {
    const double p = std::min(singular_power, 0.0);
    const double m = 3.0 / (p + 1.0);
    auto head = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double s = std::pow(u, m);
        return g(s) * std::exp(-s) * m * s / u;
    };
    auto tail = [&](double w) {
        if (w >= 1.0) return 0.0;
        const double r = 1.0 / (1.0 - w);
        const double s = 1.0 + w * r;
        return g(s) * std::exp(-s) * r * r;
    };
    // The head integrand at u = 0 is never evaluated: Gauss-Kronrod nodes are interior.
    const QuadratureResult h = integrate(head, 0.0, 1.0, cfg);
    const QuadratureResult t = integrate(tail, 0.0, 1.0, cfg);
    return {h.value + t.value, h.abs_error + t.abs_error, h.evaluations + t.evaluations,
            h.subdivisions + t.subdivisions};
}

}  // namespace shockvol
