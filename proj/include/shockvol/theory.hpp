#pragma once

#include <limits>
#include <span>
#include <vector>

#include "shockvol/model.hpp"
#include "shockvol/numeric.hpp"

namespace shockvol {

/// The four effective parameters. Sigma enters only through its first two moments.
struct TheoryParams {
    double D;
    double lambda;
    double e_sigma;
    double e_sigma_sq;

    /// Throws std::invalid_argument / InvalidParameter on inadmissible values.
    void validate() const;
    double sigma_variance() const { return e_sigma_sq - e_sigma * e_sigma; }

    static TheoryParams from_model(const ModelParams& mp) {
        return {mp.D, mp.lambda, mp.mean_sigma(), mp.mean_sigma_sq()};
    }
};

/// q* = 1 / (1/2 - D); infinite at D = 1/2.
struct CriticalOrder {
    double value;
    bool infinite;
};

CriticalOrder q_star(double D);

/// A(q): q/2 up to q*, D q + 1 beyond.
double scaling_exponent(double D, double q);

/// E|W_1|^q for a standard normal W_1.
double abs_normal_moment(double q);

enum class MomentRegime { below_critical, critical, above_critical };

struct MultiscalingConstant {
    double value;
    MomentRegime regime;
    /// Set at q = q*, where m_q(h) ~ C_q h^{q/2} log(1/h).
    bool log_factor;
};

/// Integral over [0, inf) of ((1+x)^{2D} - x^{2D})^{q/2}; finite for q > q*.
double increment_power_integral(double D, double q, const QuadratureConfig& cfg = QuadratureConfig::for_moment_constants());

/// C_q with m_q(h) ~ C_q h^{A(q)} as h -> 0.
MultiscalingConstant multiscaling_constant(const TheoryParams& tp, double sigma_q_moment, double q,
                                           const QuadratureConfig& cfg = QuadratureConfig::for_moment_constants());

/// Density of the small-time law sqrt(2D) lambda^{1/2-D} sigma S^{D-1/2} W_1.
double small_time_density(const TheoryParams& tp, const SigmaLaw& law, double x,
                          const QuadratureConfig& cfg = QuadratureConfig::for_kernels());

/// P(Z > z) for the small-time law Z.
double small_time_tail(const TheoryParams& tp, const SigmaLaw& law, double z,
                       const QuadratureConfig& cfg = QuadratureConfig::for_kernels());

/// Distribution function of the small-time law.
double small_time_cdf(const TheoryParams& tp, const SigmaLaw& law, double x,
                      const QuadratureConfig& cfg = QuadratureConfig::for_kernels());

/// Standard deviation of the small-time law; infinite when q* <= 2 would apply (never for D > 0).
double small_time_stddev(const TheoryParams& tp);

/// c^2 = lambda^{1-2D} E sigma^2 Gamma(2D+1).
double large_time_variance(const TheoryParams& tp);

/// phi(x) = Cov(sigma S^{D-1/2}, sigma (S+x)^{D-1/2}) with S ~ Exp(1).
double phi(const TheoryParams& tp, double x, const QuadratureConfig& cfg = QuadratureConfig::for_kernels());

/// Var(sigma |W_1| S^{D-1/2}) = E sigma^2 Gamma(2D) - (E sigma)^2 (2/pi) Gamma(D+1/2)^2.
double abs_return_normalizer(const TheoryParams& tp);

/// Limiting volatility autocorrelation rho(t) at separation t > 0 days.
double rho_theoretical(const TheoryParams& tp, double t, const QuadratureConfig& cfg = QuadratureConfig::for_kernels());

/// rho(t) on every separation in `ts`.
std::vector<double> rho_curve(const TheoryParams& tp, std::span<const double> ts,
                              const QuadratureConfig& cfg = QuadratureConfig::for_kernels());

}  // namespace shockvol
