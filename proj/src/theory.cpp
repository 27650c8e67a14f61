#include "shockvol/theory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "shockvol/error.hpp"

namespace shockvol {

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) throw std::invalid_argument("quadrature: rel_tol must lie in (0, 1e-3]");
    if (!(abs_tol >= 0.0)) throw std::invalid_argument("quadrature: abs_tol must be >= 0");
    if (max_subdivisions == 0) throw std::invalid_argument("quadrature: max_subdivisions must be >= 1");
}

void TheoryParams::validate() const {
    if (!(D > 0.0 && D <= 0.5)) throw std::invalid_argument("theory params: D must lie in (0, 1/2]");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("theory params: lambda must be > 0");
    if (!(e_sigma > 0.0) || !std::isfinite(e_sigma)) throw std::invalid_argument("theory params: E sigma must be > 0");
    // Allow rounding noise when E sigma^2 is set to exactly (E sigma)^2.
    if (!(e_sigma_sq >= e_sigma * e_sigma * (1.0 - 1e-12)) || !std::isfinite(e_sigma_sq)) {
        throw InvalidParameter("theory params: need E sigma^2 >= (E sigma)^2");
    }
}

CriticalOrder q_star(double D) {
    if (!(D > 0.0 && D <= 0.5)) throw std::invalid_argument("q_star: D must lie in (0, 1/2]");
    if (D == 0.5) return {std::numeric_limits<double>::infinity(), true};
    return {1.0 / (0.5 - D), false};
}

double scaling_exponent(double D, double q) {
    if (!(q > 0.0)) throw std::invalid_argument("scaling_exponent: q must be > 0");
    const CriticalOrder qs = q_star(D);
    if (qs.infinite || q <= qs.value) return 0.5 * q;
    return D * q + 1.0;
}

double abs_normal_moment(double q) {
    if (!(q > -1.0)) throw std::invalid_argument("abs_normal_moment: q must be > -1");
    return std::exp(0.5 * q * std::numbers::ln2 + std::lgamma(0.5 * (q + 1.0))) / std::sqrt(std::numbers::pi);
}

double increment_power_integral(double D, double q, const QuadratureConfig& cfg) {
    cfg.validate();
    const CriticalOrder qs = q_star(D);
    if (qs.infinite || !(q > qs.value)) {
        throw std::invalid_argument("increment_power_integral: diverges unless q > q*");
    }
    const double two_d = 2.0 * D;
    const double half_q = 0.5 * q;
    auto integrand = [&](double x) { return std::pow(pow_difference(1.0 + x, x, two_d), half_q); };
    const double head = integrate(integrand, 0.0, 1.0, cfg).value;

    // Beyond x = 1 split off the asymptotic integrand (2D)^{q/2} x^{(D-1/2)q}, whose
    // tail integral is closed form, then integrate the remainder under x = 1/t.
    const double asym_coeff = std::pow(two_d, half_q);
    const double asym_power = (D - 0.5) * q;
    const double asym_tail = asym_coeff / (-asym_power - 1.0);
    auto remainder = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double x = 1.0 / t;
        const double ratio = std::expm1(two_d * std::log1p(t)) / (two_d * t);
        const double asym = asym_coeff * std::pow(x, asym_power);
        return asym * std::expm1(half_q * std::log(ratio)) * x * x;
    };
    const double rest = integrate(remainder, 0.0, 1.0, cfg).value;
    return head + asym_tail + rest;
}

MultiscalingConstant multiscaling_constant(const TheoryParams& tp, double sigma_q_moment, double q,
                                           const QuadratureConfig& cfg) {
    tp.validate();
    if (!(q > 0.0)) throw std::invalid_argument("multiscaling_constant: q must be > 0");
    if (!(sigma_q_moment > 0.0) || !std::isfinite(sigma_q_moment)) {
        throw std::invalid_argument("multiscaling_constant: E sigma^q must be finite and > 0");
    }
    const double base = abs_normal_moment(q) * sigma_q_moment;
    const CriticalOrder qs = q_star(tp.D);
    const double ratio = qs.infinite ? 0.0 : q / qs.value;
    if (qs.infinite || std::abs(ratio - 1.0) > 1e-12) {
        if (ratio < 1.0) {
            const double value = base * std::pow(tp.lambda, ratio) * std::pow(2.0 * tp.D, 0.5 * q) * std::tgamma(1.0 - ratio);
            return {value, MomentRegime::below_critical, false};
        }
        const double integral = increment_power_integral(tp.D, q, cfg);
        const double value = base * tp.lambda * (integral + 1.0 / (tp.D * q + 1.0));
        return {value, MomentRegime::above_critical, false};
    }
    return {base * tp.lambda * std::pow(2.0 * tp.D, 0.5 * q), MomentRegime::critical, true};
}

namespace {

double mixture_scale(const TheoryParams& tp) {
    return std::sqrt(2.0 * tp.D) * std::pow(tp.lambda, 0.5 - tp.D);
}

}  // namespace

double small_time_density(const TheoryParams& tp, const SigmaLaw& law, double x, const QuadratureConfig& cfg) {
    tp.validate();
    cfg.validate();
    const double a = mixture_scale(tp);
    const double expo = 0.5 - tp.D;  // standard deviation is a sigma s^{-expo}
    return law.expect([&](double sigma) {
        const double c = a * sigma;
        auto g = [&](double s) {
            const double inv_sd = std::pow(s, expo) / c;
            const double z = x * inv_sd;
            return inv_sd * std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
        };
        return integrate_exp_weighted(g, expo, cfg).value;
    });
}

double small_time_tail(const TheoryParams& tp, const SigmaLaw& law, double z, const QuadratureConfig& cfg) {
    tp.validate();
    cfg.validate();
    if (!(z >= 0.0)) throw std::invalid_argument("small_time_tail: z must be >= 0");
    if (z == 0.0) return 0.5;
    const double a = mixture_scale(tp);
    const double expo = 0.5 - tp.D;
    return law.expect([&](double sigma) {
        const double c = a * sigma;
        auto g = [&](double s) { return 0.5 * std::erfc(z * std::pow(s, expo) / (c * std::numbers::sqrt2)); };
        return integrate_exp_weighted(g, 0.0, cfg).value;
    });
}

double small_time_cdf(const TheoryParams& tp, const SigmaLaw& law, double x, const QuadratureConfig& cfg) {
    return x >= 0.0 ? 1.0 - small_time_tail(tp, law, x, cfg) : small_time_tail(tp, law, -x, cfg);
}

double small_time_stddev(const TheoryParams& tp) {
    tp.validate();
    return std::sqrt(2.0 * tp.D * std::pow(tp.lambda, 1.0 - 2.0 * tp.D) * tp.e_sigma_sq * std::tgamma(2.0 * tp.D));
}

double large_time_variance(const TheoryParams& tp) {
    tp.validate();
    return std::pow(tp.lambda, 1.0 - 2.0 * tp.D) * tp.e_sigma_sq * std::tgamma(2.0 * tp.D + 1.0);
}

double phi(const TheoryParams& tp, double x, const QuadratureConfig& cfg) {
    tp.validate();
    cfg.validate();
    if (!(x >= 0.0)) throw std::invalid_argument("phi: x must be >= 0");
    const double a = tp.D - 0.5;
    const double var_sigma = std::max(0.0, tp.sigma_variance());
    const double mean_sq = tp.e_sigma * tp.e_sigma;
    const double mu = std::tgamma(a + 1.0);  // E S^a
    if (x == 0.0) {
        const double second = std::tgamma(2.0 * a + 1.0);  // E S^{2a}
        return var_sigma * second + mean_sq * (second - mu * mu);
    }
    if (a == 0.0) return var_sigma;

    // Cov(S^a, (S+x)^a) = E[(S^a - mu) ((S+x)^a - k)] for any constant k; k = x^a keeps the
    // second factor small when x is large, k = 0 avoids a large cancelling constant when x is small.
    const bool centered = x >= 1.0;
    const double xa = std::pow(x, a);
    auto g = [&](double s) {
        const double sa = std::pow(s, a);
        const double shifted = centered ? xa * std::expm1(a * std::log1p(s / x)) : std::pow(s + x, a);
        const double sx = centered ? shifted + xa : shifted;
        return var_sigma * sa * sx + mean_sq * (sa - mu) * shifted;
    };
    return integrate_exp_weighted(g, a, cfg).value;
}

double abs_return_normalizer(const TheoryParams& tp) {
    tp.validate();
    const double g = std::tgamma(tp.D + 0.5);
    return tp.e_sigma_sq * std::tgamma(2.0 * tp.D) - tp.e_sigma * tp.e_sigma * (2.0 / std::numbers::pi) * g * g;
}

double rho_theoretical(const TheoryParams& tp, double t, const QuadratureConfig& cfg) {
    if (!(t > 0.0)) throw std::invalid_argument("rho_theoretical: t must be > 0");
    const double norm = abs_return_normalizer(tp);
    if (!(norm > 0.0)) throw InvalidParameter("rho_theoretical: nonpositive normalizer Var(sigma |W| S^{D-1/2})");
    const double x = tp.lambda * t;
    return 2.0 / (std::numbers::pi * norm) * std::exp(-x) * phi(tp, x, cfg);
}

std::vector<double> rho_curve(const TheoryParams& tp, std::span<const double> ts, const QuadratureConfig& cfg) {
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) out.push_back(rho_theoretical(tp, t, cfg));
    return out;
}

}  // namespace shockvol
