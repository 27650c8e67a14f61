#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "shockvol/rng.hpp"

namespace shockvol {

// Volatility mark laws. Only laws with closed-form moments are supported.

struct ConstantSigma {
    double value;
};

struct TwoPointSigma {
    double lo;
    double hi;
    double p_hi;  ///< probability of drawing `hi`
};

/// log(sigma) ~ N(mu, s^2).
struct LogNormalSigma {
    double mu;
    double s;
};

class SigmaLaw {
public:
    using Variant = std::variant<ConstantSigma, TwoPointSigma, LogNormalSigma>;

    SigmaLaw(ConstantSigma c);
    SigmaLaw(TwoPointSigma t);
    SigmaLaw(LogNormalSigma l);

    static SigmaLaw constant(double value) { return SigmaLaw(ConstantSigma{value}); }

    /// E sigma^q, closed form for every variant.
    double moment(double q) const;
    double mean() const { return moment(1.0); }
    double mean_sq() const { return moment(2.0); }
    double variance() const;

    double sample(Rng& rng) const;

    const Variant& variant() const noexcept { return law_; }

    /// Expectation of g(sigma). Exact for the discrete laws; Gauss-Hermite for the log-normal.
    template <class F>
    double expect(F&& g) const;

private:
    Variant law_;
};

struct ModelParams {
    double D;
    double lambda;  ///< shocks per day
    SigmaLaw sigma_law;

    ModelParams(double d, double lam, SigmaLaw law);

    double mean_sigma() const { return sigma_law.mean(); }
    double mean_sigma_sq() const { return sigma_law.mean_sq(); }
};

/// Realized shock epochs and volatility marks.
///
/// `marks[0]` pairs with `tau0`, `marks[k]` with `epochs[k-1]`. The last epoch is
/// the single one beyond `horizon`.
struct ShockTrain {
    double tau0;
    std::vector<double> epochs;
    std::vector<double> marks;
    double horizon;

    /// Number of epochs in (0, t], i.e. i(t).
    std::size_t count_up_to(double t) const;
    /// Epoch of the last shock at or before t (tau0 when none).
    double last_epoch(double t) const;
    double mark_at(double t) const { return marks[count_up_to(t)]; }
};

struct LogPricePath {
    std::vector<double> grid;
    std::vector<double> i_vals;
    std::vector<double> x_vals;
    std::uint64_t seed;
    std::uint64_t stream;
};

ShockTrain sample_shock_train(const ModelParams& params, double horizon, Rng& rng);

/// I(t), the accumulated trading time at calendar time t in [0, horizon].
double time_change_at(const ShockTrain& train, const ModelParams& params, double t);

/// I(t) - I(s) for s <= t, evaluated piecewise without subtracting large totals.
double time_change_increment(const ShockTrain& train, const ModelParams& params, double s, double t);

/// Exact grid simulation of X = W(I) with n_steps steps of size dt.
LogPricePath simulate_path(const ModelParams& params, std::size_t n_steps, double dt, Rng& rng);
/// Same, using stream `stream` of `seed`; the path records both.
LogPricePath simulate_path(const ModelParams& params, std::size_t n_steps, double dt,
                           std::uint64_t seed, std::uint64_t stream = 0);
/// Simulated path plus the shock train that produced it.
struct SimulatedPath {
    ShockTrain train;
    LogPricePath path;
};
SimulatedPath simulate_path_with_train(const ModelParams& params, std::size_t n_steps, double dt,
                                       std::uint64_t seed, std::uint64_t stream = 0);

/// Draw of I_h over a fresh stationary window [0, h], without building a ShockTrain.
double sample_time_change_increment(const ModelParams& params, double h, Rng& rng);

/// v_t = sqrt(2D) sigma_{i(t)} (t - tau_{i(t)})^{D - 1/2}.
double instantaneous_volatility(const ShockTrain& train, const ModelParams& params, double t);

/// Constants of the pathwise decay law d(v^2)/dt = -alpha (v^2)^gamma between shocks.
struct VolatilityDecayLaw {
    double alpha;
    double gamma;
};
VolatilityDecayLaw volatility_decay_law(double D, double sigma);

struct DrivingIncrements {
    std::vector<double> increments;      ///< one per retained step
    std::vector<std::size_t> kept_steps;  ///< index j of each retained step
    std::vector<std::size_t> skipped_steps;
};

/// Recover increments of the driving Brownian motion as dx_j / v(midpoint of step j).
/// Steps containing a shock epoch are skipped and reported.
DrivingIncrements reconstruct_driving_bm(const LogPricePath& path, const ShockTrain& train,
                                         const ModelParams& params);

// Implementation of SigmaLaw::expect.

namespace detail {
/// 20-point Gauss-Hermite (probabilists' weight) nodes and weights, normalized to sum 1.
struct HermiteRule {
    static constexpr std::size_t size = 20;
    double nodes[size];
    double weights[size];
};
const HermiteRule& hermite_rule();
}  // namespace detail

template <class F>
double SigmaLaw::expect(F&& g) const {
    if (const auto* c = std::get_if<ConstantSigma>(&law_)) return g(c->value);
    if (const auto* t = std::get_if<TwoPointSigma>(&law_)) {
        return (1.0 - t->p_hi) * g(t->lo) + t->p_hi * g(t->hi);
    }
    const auto& l = std::get<LogNormalSigma>(law_);
    const auto& rule = detail::hermite_rule();
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.size; ++k) acc += rule.weights[k] * g(std::exp(l.mu + l.s * rule.nodes[k]));
    return acc;
}

}  // namespace shockvol
