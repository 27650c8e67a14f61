#include "shockvol/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "shockvol/error.hpp"
#include "shockvol/numeric.hpp"

namespace shockvol {

namespace {

void check_volatility(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string("sigma law: ") + name + " must be finite and > 0");
    }
}

/// Physicists' Gauss-Hermite by Newton iteration on the orthonormal recurrence.
detail::HermiteRule build_hermite_rule() {
    constexpr std::size_t n = detail::HermiteRule::size;
    const double pim4 = std::pow(std::numbers::pi, -0.25);
    double nodes[n];
    double weights[n];
    double z = 0.0;
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * nodes[1];
        } else {
            z = 2.0 * z - nodes[i - 2];
        }
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = pim4;
            double p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) break;
        }
        nodes[i] = z;
        nodes[n - 1 - i] = -z;
        weights[i] = 2.0 / (pp * pp);
        weights[n - 1 - i] = weights[i];
    }
    // Convert to the standard normal weight.
    detail::HermiteRule rule{};
    for (std::size_t i = 0; i < n; ++i) {
        rule.nodes[i] = std::numbers::sqrt2 * nodes[i];
        rule.weights[i] = weights[i] / std::sqrt(std::numbers::pi);
    }
    return rule;
}

}  // namespace

const detail::HermiteRule& detail::hermite_rule() {
    static const HermiteRule rule = build_hermite_rule();
    return rule;
}

SigmaLaw::SigmaLaw(ConstantSigma c) : law_(c) { check_volatility(c.value, "constant value"); }

SigmaLaw::SigmaLaw(TwoPointSigma t) : law_(t) {
    check_volatility(t.lo, "lo");
    check_volatility(t.hi, "hi");
    if (!(t.p_hi >= 0.0 && t.p_hi <= 1.0)) throw std::invalid_argument("sigma law: p_hi must lie in [0, 1]");
}

SigmaLaw::SigmaLaw(LogNormalSigma l) : law_(l) {
    if (!std::isfinite(l.mu) || !(l.s >= 0.0) || !std::isfinite(l.s)) {
        throw std::invalid_argument("sigma law: log-normal needs finite mu and s >= 0");
    }
}

double SigmaLaw::moment(double q) const {
    if (const auto* c = std::get_if<ConstantSigma>(&law_)) return std::pow(c->value, q);
    if (const auto* t = std::get_if<TwoPointSigma>(&law_)) {
        return (1.0 - t->p_hi) * std::pow(t->lo, q) + t->p_hi * std::pow(t->hi, q);
    }
    const auto& l = std::get<LogNormalSigma>(law_);
    return std::exp(q * l.mu + 0.5 * q * q * l.s * l.s);
}

double SigmaLaw::variance() const {
    if (std::holds_alternative<ConstantSigma>(law_)) return 0.0;
    return std::max(0.0, mean_sq() - mean() * mean());
}

double SigmaLaw::sample(Rng& rng) const {
    if (const auto* c = std::get_if<ConstantSigma>(&law_)) return c->value;
    if (const auto* t = std::get_if<TwoPointSigma>(&law_)) return rng.uniform() < t->p_hi ? t->hi : t->lo;
    const auto& l = std::get<LogNormalSigma>(law_);
    return std::exp(l.mu + l.s * rng.normal());
}

ModelParams::ModelParams(double d, double lam, SigmaLaw law) : D(d), lambda(lam), sigma_law(std::move(law)) {
    if (!(D > 0.0 && D <= 0.5)) throw std::invalid_argument("model params: D must lie in (0, 1/2]");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("model params: lambda must be > 0");
}

std::size_t ShockTrain::count_up_to(double t) const {
    return static_cast<std::size_t>(std::upper_bound(epochs.begin(), epochs.end(), t) - epochs.begin());
}

double ShockTrain::last_epoch(double t) const {
    const std::size_t i = count_up_to(t);
    return i == 0 ? tau0 : epochs[i - 1];
}

ShockTrain sample_shock_train(const ModelParams& params, double horizon, Rng& rng) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw std::invalid_argument("sample_shock_train: horizon must be > 0");
    }
    ShockTrain train;
    train.horizon = horizon;
    train.tau0 = -rng.exponential(params.lambda);
    train.marks.push_back(params.sigma_law.sample(rng));
    double t = 0.0;
    do {
        t += rng.exponential(params.lambda);
        train.epochs.push_back(t);
        train.marks.push_back(params.sigma_law.sample(rng));
    } while (t <= horizon);
    return train;
}

double time_change_at(const ShockTrain& train, const ModelParams& params, double t) {
    if (!(t >= 0.0 && t <= train.horizon)) throw std::out_of_range("time_change_at: t outside [0, horizon]");
    const double two_d = 2.0 * params.D;
    const std::size_t i = train.count_up_to(t);
    auto epoch = [&](std::size_t k) { return k == 0 ? train.tau0 : train.epochs[k - 1]; };
    auto sq = [](double v) { return v * v; };

    double value = sq(train.marks[i]) * std::pow(t - epoch(i), two_d);
    for (std::size_t k = 1; k <= i; ++k) value += sq(train.marks[k - 1]) * std::pow(epoch(k) - epoch(k - 1), two_d);
    value -= sq(train.marks[0]) * std::pow(-train.tau0, two_d);
    return value;
}

double time_change_increment(const ShockTrain& train, const ModelParams& params, double s, double t) {
    if (!(s >= 0.0 && s <= t && t <= train.horizon)) {
        throw std::out_of_range("time_change_increment: need 0 <= s <= t <= horizon");
    }
    const double two_d = 2.0 * params.D;
    std::size_t k = train.count_up_to(s);
    double a = s;
    double total = 0.0;
    for (;;) {
        const double start = k == 0 ? train.tau0 : train.epochs[k - 1];
        const double next = train.epochs[k];
        const double b = std::min(t, next);
        const double sig = train.marks[k];
        total += sig * sig * pow_difference(b - start, a - start, two_d);
        if (next >= t) break;
        a = next;
        ++k;
    }
    return total;
}

namespace {

LogPricePath simulate_on_train(const ShockTrain& train, const ModelParams& params, std::size_t n_steps, double dt,
                               Rng& rng) {
    LogPricePath path;
    path.grid.resize(n_steps + 1);
    path.i_vals.resize(n_steps + 1);
    path.x_vals.resize(n_steps + 1);
    path.grid[0] = path.i_vals[0] = path.x_vals[0] = 0.0;
    for (std::size_t j = 0; j < n_steps; ++j) {
        const double t0 = static_cast<double>(j) * dt;
        const double t1 = j + 1 == n_steps ? train.horizon : static_cast<double>(j + 1) * dt;
        const double di = time_change_increment(train, params, t0, t1);
        path.grid[j + 1] = t1;
        path.i_vals[j + 1] = path.i_vals[j] + di;
        path.x_vals[j + 1] = path.x_vals[j] + std::sqrt(di) * rng.normal();
    }
    return path;
}

void check_grid(std::size_t n_steps, double dt) {
    if (n_steps < 1) throw std::invalid_argument("simulate_path: n_steps must be >= 1");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("simulate_path: dt must be > 0");
}

}  // namespace

LogPricePath simulate_path(const ModelParams& params, std::size_t n_steps, double dt, Rng& rng) {
    check_grid(n_steps, dt);
    const ShockTrain train = sample_shock_train(params, static_cast<double>(n_steps) * dt, rng);
    return simulate_on_train(train, params, n_steps, dt, rng);
}

LogPricePath simulate_path(const ModelParams& params, std::size_t n_steps, double dt, std::uint64_t seed,
                           std::uint64_t stream) {
    return simulate_path_with_train(params, n_steps, dt, seed, stream).path;
}

SimulatedPath simulate_path_with_train(const ModelParams& params, std::size_t n_steps, double dt,
                                       std::uint64_t seed, std::uint64_t stream) {
    check_grid(n_steps, dt);
    Rng rng(seed, stream);
    SimulatedPath out;
    out.train = sample_shock_train(params, static_cast<double>(n_steps) * dt, rng);
    out.path = simulate_on_train(out.train, params, n_steps, dt, rng);
    out.path.seed = seed;
    out.path.stream = stream;
    return out;
}

double sample_time_change_increment(const ModelParams& params, double h, Rng& rng) {
    if (!(h > 0.0)) throw std::invalid_argument("sample_time_change_increment: h must be > 0");
    const double two_d = 2.0 * params.D;
    const double age = rng.exponential(params.lambda);
    double sig = params.sigma_law.sample(rng);
    double gap = rng.exponential(params.lambda);
    if (gap >= h) return sig * sig * pow_difference(age + h, age, two_d);

    double total = sig * sig * pow_difference(age + gap, age, two_d);
    double pos = gap;
    for (;;) {
        sig = params.sigma_law.sample(rng);
        gap = rng.exponential(params.lambda);
        if (pos + gap >= h) return total + sig * sig * std::pow(h - pos, two_d);
        total += sig * sig * std::pow(gap, two_d);
        pos += gap;
    }
}

double instantaneous_volatility(const ShockTrain& train, const ModelParams& params, double t) {
    if (!(t >= 0.0 && t <= train.horizon)) throw std::out_of_range("instantaneous_volatility: t outside [0, horizon]");
    const double age = t - train.last_epoch(t);
    if (params.D < 0.5 && age == 0.0) {
        throw SingularPointError("instantaneous_volatility: t coincides with a shock epoch");
    }
    return std::sqrt(2.0 * params.D) * train.mark_at(t) * std::pow(age, params.D - 0.5);
}

VolatilityDecayLaw volatility_decay_law(double D, double sigma) {
    if (!(D > 0.0 && D < 0.5)) throw std::invalid_argument("volatility_decay_law: needs 0 < D < 1/2");
    const double e = 1.0 / (1.0 - 2.0 * D);
    return {(1.0 - 2.0 * D) / (std::pow(2.0 * D, e) * std::pow(sigma, 2.0 * e)), 2.0 + 2.0 * D * e};
}

DrivingIncrements reconstruct_driving_bm(const LogPricePath& path, const ShockTrain& train,
                                         const ModelParams& params) {
    DrivingIncrements out;
    for (std::size_t j = 0; j + 1 < path.grid.size(); ++j) {
        const double t0 = path.grid[j];
        const double t1 = path.grid[j + 1];
        if (train.count_up_to(t1) != train.count_up_to(t0)) {
            out.skipped_steps.push_back(j);
            continue;
        }
        const double v = instantaneous_volatility(train, params, 0.5 * (t0 + t1));
        out.increments.push_back((path.x_vals[j + 1] - path.x_vals[j]) / v);
        out.kept_steps.push_back(j);
    }
    return out;
}

}  // namespace shockvol
