#include "shockvol/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "shockvol/error.hpp"
#include "shockvol/parallel.hpp"
#include "shockvol/stats.hpp"

namespace shockvol {

void LossConfig::validate() const {
    if (!(t_discount > 0.0)) throw std::invalid_argument("loss config: T must be > 0");
    if (n_corr == 0) throw std::invalid_argument("loss config: n_corr must be >= 1");
    if (!(weight_c >= 0.0 && weight_a >= 0.0 && weight_rho >= 0.0)) {
        throw std::invalid_argument("loss config: weights must be nonnegative");
    }
    quadrature.validate();
}

std::vector<double> LossConfig::rho_weights() const {
    std::vector<double> w(n_corr);
    double sum = 0.0;
    for (std::size_t n = 1; n <= n_corr; ++n) sum += std::exp(-static_cast<double>(n) / t_discount);
    for (std::size_t n = 1; n <= n_corr; ++n) w[n - 1] = std::exp(-static_cast<double>(n) / t_discount) / sum;
    return w;
}

namespace {

double sq(double v) { return v * v; }

}  // namespace

LossBreakdown loss(const ObservableSet& obs, const TheoryParams& tp, const LossConfig& cfg) {
    cfg.validate();
    tp.validate();
    if (obs.rho_hat.size() < cfg.n_corr) throw std::invalid_argument("loss: observables hold fewer rho values than n_corr");

    const double c1 = multiscaling_constant(tp, tp.e_sigma, 1.0).value;
    const double c2 = multiscaling_constant(tp, tp.e_sigma_sq, 2.0).value;
    if (!(c1 > 0.0) || !(c2 > 0.0)) throw InvalidParameter("loss: nonpositive multiscaling constant");

    LossBreakdown out;
    out.c_term = cfg.weight_c * (sq(obs.c1_hat / c1 - 1.0) + sq(obs.c2_hat / c2 - 1.0));
    for (const ScalingFit& f : obs.a_hat) out.a_term += cfg.weight_a * sq(f.a_hat / scaling_exponent(tp.D, f.q) - 1.0);

    const std::vector<double> w = cfg.rho_weights();
    const std::vector<double> rho =
        rho_curve(tp, std::span<const double>(obs.rho_t).subspan(0, cfg.n_corr), cfg.quadrature);
    double rho_sum = 0.0;
    for (std::size_t n = 0; n < cfg.n_corr; ++n) {
        if (!(rho[n] > 0.0)) throw InvalidParameter("loss: nonpositive theoretical autocorrelation");
        rho_sum += w[n] * sq(obs.rho_hat[n] / rho[n] - 1.0);
    }
    out.rho_term = cfg.weight_rho * rho_sum;
    return out;
}

ObservableSet theoretical_observables(const TheoryParams& tp, const LossConfig& cfg, const ObservableConfig& grid) {
    ObservableSet obs;
    obs.c1_hat = multiscaling_constant(tp, tp.e_sigma, 1.0).value;
    obs.c2_hat = multiscaling_constant(tp, tp.e_sigma_sq, 2.0).value;
    for (double q : grid.q_grid) obs.a_hat.push_back({q, scaling_exponent(tp.D, q), 0.0, 1.0});
    for (std::size_t t = 1; t <= grid.max_separation; ++t) obs.rho_t.push_back(static_cast<double>(t));
    obs.rho_hat = rho_curve(tp, obs.rho_t, cfg.quadrature);
    return obs;
}

std::vector<std::array<double, 3>> FitOptions::default_starts() {
    std::vector<std::array<double, 3>> out;
    for (double d : {0.1, 0.3})
        for (double lam : {1.0 / 250.0, 1.0 / 2000.0})
            for (double es : {0.05, 0.2}) out.push_back({d, lam, es});
    return out;
}

namespace {

constexpr double kLogitScale = 0.5;

struct Transform {
    bool constrained;

    TheoryParams to_params(const std::vector<double>& z) const {
        TheoryParams tp;
        tp.D = kLogitScale / (1.0 + std::exp(-z[0]));
        tp.lambda = std::exp(z[1]);
        tp.e_sigma = std::exp(z[2]);
        tp.e_sigma_sq = constrained ? tp.e_sigma * tp.e_sigma * (1.0 + std::exp(z[3])) : std::exp(z[3]);
        return tp;
    }

    std::vector<double> from_start(const std::array<double, 3>& s) const {
        const double d_frac = s[0] / kLogitScale;
        const double es_sq = 1.1 * s[2] * s[2];
        return {std::log(d_frac / (1.0 - d_frac)), std::log(s[1]), std::log(s[2]),
                constrained ? std::log(0.1) : std::log(es_sq)};
    }
};

/// Loss evaluations memoized by transformed point; one instance per fit.
class LossCache {
public:
    LossCache(const ObservableSet& obs, const LossConfig& cfg, Transform tr) : obs_(obs), cfg_(cfg), tr_(tr) {}

    double operator()(const std::vector<double>& z) {
        const std::array<double, 4> key{z[0], z[1], z[2], z[3]};
        {
            std::lock_guard lock(mutex_);
            if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        }
        double value = std::numeric_limits<double>::infinity();
        try {
            value = loss(obs_, tr_.to_params(z), cfg_).total();
        } catch (const std::invalid_argument&) {
        } catch (const NumericFailure&) {
        }
        if (!std::isfinite(value)) value = std::numeric_limits<double>::infinity();
        std::lock_guard lock(mutex_);
        memo_.emplace(key, value);
        return value;
    }

private:
    const ObservableSet& obs_;
    const LossConfig& cfg_;
    Transform tr_;
    std::mutex mutex_;
    std::map<std::array<double, 4>, double> memo_;
};

}  // namespace

FitResult fit(const ObservableSet& obs, const LossConfig& cfg, const FitOptions& opt) {
    cfg.validate();
    obs.validate(obs.a_hat.size(), obs.rho_hat.size());
    if (obs.a_hat.empty() || obs.rho_hat.size() < cfg.n_corr) throw std::invalid_argument("fit: incomplete observables");
    if (opt.starts.empty()) throw std::invalid_argument("fit: no start points");

    const Transform tr{opt.enforce_moment_constraint};
    LossCache objective(obs, cfg, tr);
    auto fn = [&](const std::vector<double>& z) { return objective(z); };

    std::vector<SimplexResult> runs(opt.starts.size());
    parallel_for(opt.starts.size(), opt.workers, [&](std::size_t i) {
        runs[i] = nelder_mead(fn, tr.from_start(opt.starts[i]), opt.simplex);
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < runs.size(); ++i) {
        if (runs[i].value < runs[best].value) best = i;
    }
    SimplexResult incumbent = runs[best];
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    for (const auto& r : runs) {
        iterations += r.iterations;
        evaluations += r.evaluations;
    }
    if (!std::isfinite(incumbent.value) || incumbent.value >= HUGE_VAL) {
        throw FitFailure("fit: no start point produced a finite loss");
    }

    // Restarting from the incumbent with a fresh simplex guards against simplex collapse.
    SimplexOptions polish = opt.simplex;
    polish.initial_step = 0.1;
    for (std::size_t round = 0; round < opt.max_polish_rounds; ++round) {
        SimplexResult next = nelder_mead(fn, incumbent.x, polish);
        iterations += next.iterations;
        evaluations += next.evaluations;
        const bool improved = next.value < incumbent.value - 1e-14 * std::max(1.0, incumbent.value);
        if (next.value <= incumbent.value) incumbent = std::move(next);
        if (!improved) break;
    }

    FitResult out;
    out.params = tr.to_params(incumbent.x);
    out.breakdown = loss(obs, out.params, cfg);
    out.loss_value = out.breakdown.total();
    out.converged = incumbent.converged;
    out.iterations = iterations;
    out.evaluations = evaluations;
    return out;
}

ReturnSeries simulate_return_series(const ModelParams& params, std::size_t years, std::uint64_t seed,
                                    std::uint64_t stream) {
    const std::size_t window = kTradingDaysPerYear;
    const std::size_t steps = years * kTradingDaysPerYear + window;
    const LogPricePath path = simulate_path(params, steps, 1.0, seed, stream);
    PriceSeries ps;
    ps.prices.reserve(path.x_vals.size());
    for (double x : path.x_vals) ps.prices.push_back(std::exp(x));
    return detrend(ps, window);
}

namespace {

ParameterRecovery recovery(double truth, const std::vector<double>& estimates) {
    const stats::Summary s = stats::summarize(estimates);
    return {truth, stats::quantile(estimates, 0.5), s.mean - truth,
            stats::quantile(estimates, 0.75) - stats::quantile(estimates, 0.25)};
}

}  // namespace

RoundtripReport roundtrip(const ModelParams& truth, std::size_t years, std::size_t n_replicas, std::uint64_t seed,
                          const LossConfig& cfg, const FitOptions& opt) {
    if (years < 30) throw std::invalid_argument("roundtrip: needs at least 30 years per replica");
    if (n_replicas == 0) throw std::invalid_argument("roundtrip: needs at least one replica");

    RoundtripReport report;
    report.fits.resize(n_replicas);
    FitOptions inner = opt;
    inner.workers = 1;
    parallel_for(n_replicas, opt.workers, [&](std::size_t r) {
        const ReturnSeries rs = simulate_return_series(truth, years, seed, r);
        report.fits[r] = fit(compute_observables(rs), cfg, inner);
    });

    std::vector<double> d, lam, es, es2;
    for (const FitResult& f : report.fits) {
        d.push_back(f.params.D);
        lam.push_back(f.params.lambda);
        es.push_back(f.params.e_sigma);
        es2.push_back(f.params.e_sigma_sq);
    }
    const TheoryParams tp = TheoryParams::from_model(truth);
    report.D = recovery(tp.D, d);
    report.lambda = recovery(tp.lambda, lam);
    report.e_sigma = recovery(tp.e_sigma, es);
    report.e_sigma_sq = recovery(tp.e_sigma_sq, es2);
    return report;
}

}  // namespace shockvol
