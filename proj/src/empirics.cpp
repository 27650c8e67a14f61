#include "shockvol/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "shockvol/error.hpp"
#include "shockvol/stats.hpp"

namespace shockvol {

void PriceSeries::validate() const {
    if (!dates.empty() && dates.size() != prices.size()) throw DataError("price series: dates and prices differ in length");
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!(prices[i] > 0.0) || !std::isfinite(prices[i])) throw DataError("price must be finite and > 0", i + 1);
        if (!dates.empty() && i > 0 && !(dates[i - 1] < dates[i])) throw DataError("dates must be strictly increasing", i + 1);
    }
}

ReturnSeries ReturnSeries::from_levels(std::vector<double> levels, std::size_t offset) {
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!std::isfinite(levels[i])) throw DataError("non-finite level", i + 1);
    }
    return {std::move(levels), offset};
}

ReturnSeries detrend(const PriceSeries& ps, std::size_t window) {
    if (window == 0) throw std::invalid_argument("detrend: window must be >= 1");
    if (ps.prices.size() <= window) throw std::invalid_argument("detrend: series must be longer than the window");
    ps.validate();
    std::vector<double> logs(ps.prices.size());
    std::transform(ps.prices.begin(), ps.prices.end(), logs.begin(), [](double p) { return std::log(p); });

    ReturnSeries out;
    out.offset = window;
    out.x.reserve(logs.size() - window);
    // The rolling mean is recomputed from scratch each step; long series make a running sum drift.
    for (std::size_t i = window; i < logs.size(); ++i) {
        double sum = 0.0;
        for (std::size_t k = i - window; k < i; ++k) sum += logs[k];
        out.x.push_back(logs[i] - sum / static_cast<double>(window));
    }
    return out;
}

double empirical_moment(const ReturnSeries& rs, double q, std::size_t h) {
    if (!(q > 0.0)) throw std::invalid_argument("empirical_moment: q must be > 0");
    if (h < 1 || h >= rs.size()) throw std::invalid_argument("empirical_moment: lag must satisfy 1 <= h < length");
    double acc = 0.0;
    for (std::size_t i = 0; i + h < rs.size(); ++i) acc += std::pow(std::abs(rs.x[i + h] - rs.x[i]), q);
    return acc / static_cast<double>(rs.size() - h);
}

ScalingFit scaling_fit_from_moments(double q, std::span<const std::size_t> lags, std::span<const double> moments) {
    if (lags.size() < 2 || lags.size() != moments.size()) {
        throw std::invalid_argument("scaling fit: need at least two (lag, moment) pairs");
    }
    std::vector<double> lx, ly;
    for (std::size_t j = 0; j < lags.size(); ++j) {
        if (!(moments[j] > 0.0)) {
            throw DegenerateDataError("scaling fit: empirical moment is zero at lag " + std::to_string(lags[j]));
        }
        lx.push_back(std::log(static_cast<double>(lags[j])));
        ly.push_back(std::log(moments[j]));
    }
    const stats::LinearFit fit = stats::ols(lx, ly);
    return {q, fit.slope, fit.intercept, fit.r_squared};
}

ScalingFit scaling_regression(const ReturnSeries& rs, double q, std::span<const std::size_t> lags) {
    std::vector<double> moments;
    for (std::size_t h : lags) moments.push_back(empirical_moment(rs, q, h));
    return scaling_fit_from_moments(q, lags, moments);
}

namespace {

std::vector<double> abs_increments(const ReturnSeries& rs, std::size_t h) {
    std::vector<double> out(rs.size() - h);
    for (std::size_t i = 0; i + h < rs.size(); ++i) out[i] = std::abs(rs.x[i + h] - rs.x[i]);
    return out;
}

double correlation_at(std::span<const double> absinc, std::size_t t) {
    const std::size_t n = absinc.size() - t;
    const double r = stats::pearson(absinc.subspan(0, n), absinc.subspan(t, n));
    if (std::isnan(r)) throw DegenerateDataError("vol_autocorrelation: zero variance in absolute returns");
    return r;
}

}  // namespace

double vol_autocorrelation(const ReturnSeries& rs, std::size_t h, std::size_t t) {
    if (h < 1 || t < 1) throw std::invalid_argument("vol_autocorrelation: need h >= 1 and t >= 1");
    if (h + t + 1 >= rs.size()) throw std::invalid_argument("vol_autocorrelation: h + t too large for the series");
    const std::vector<double> absinc = abs_increments(rs, h);
    return correlation_at(absinc, t);
}

void empirical_tails(std::span<const double> returns, std::span<const double> z, std::vector<double>& left,
                     std::vector<double>& right) {
    std::vector<double> sorted(returns.begin(), returns.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    left.clear();
    right.clear();
    for (double level : z) {
        const auto below = std::lower_bound(sorted.begin(), sorted.end(), -level) - sorted.begin();
        const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), level);
        left.push_back(static_cast<double>(below) / n);
        right.push_back(static_cast<double>(above) / n);
    }
}

EmpiricalDistribution empirical_distribution(const ReturnSeries& rs, std::size_t lag, std::size_t grid_points,
                                             std::size_t tail_points) {
    if (lag < 1 || lag >= rs.size()) throw std::invalid_argument("empirical_distribution: lag out of range");
    if (grid_points < 2 || tail_points < 2) throw std::invalid_argument("empirical_distribution: need >= 2 grid points");
    std::vector<double> returns(rs.size() - lag);
    for (std::size_t i = 0; i + lag < rs.size(); ++i) returns[i] = rs.x[i + lag] - rs.x[i];

    EmpiricalDistribution out;
    out.lag = lag;
    out.s_hat = std::sqrt(stats::summarize(returns).variance);
    for (std::size_t k = 0; k < grid_points; ++k) {
        out.grid.push_back(out.s_hat * (-3.0 + 6.0 * static_cast<double>(k) / static_cast<double>(grid_points - 1)));
    }
    if (out.s_hat > 0.0) {
        out.density = stats::gaussian_kde(returns, out.grid, stats::silverman_bandwidth(returns));
    } else {
        out.density.assign(grid_points, 0.0);
    }
    // Log-spaced thresholds from s to 12 s.
    for (std::size_t k = 0; k < tail_points; ++k) {
        out.z.push_back(out.s_hat * std::pow(12.0, static_cast<double>(k) / static_cast<double>(tail_points - 1)));
    }
    empirical_tails(returns, out.z, out.left_tail, out.right_tail);
    return out;
}

ObservableConfig ObservableConfig::standard() {
    ObservableConfig cfg;
    for (int k = 1; k <= 20; ++k) cfg.q_grid.push_back(k / 4.0);
    cfg.lags = default_lags();
    return cfg;
}

void ObservableSet::validate(std::size_t expected_q, std::size_t expected_t) const {
    if (a_hat.size() != expected_q) throw std::invalid_argument("observables: wrong number of A(q) entries");
    if (rho_hat.size() != expected_t || rho_t.size() != expected_t) {
        throw std::invalid_argument("observables: wrong number of rho entries");
    }
    if (!(c1_hat > 0.0) || !(c2_hat > 0.0)) throw std::invalid_argument("observables: C1 and C2 must be > 0");
    for (double r : rho_hat) {
        if (!(r >= -1.0 && r <= 1.0)) throw std::invalid_argument("observables: correlation outside [-1, 1]");
    }
}

ObservableSet compute_observables(const ReturnSeries& rs, const ObservableConfig& cfg) {
    if (cfg.lags.size() < 2) throw std::invalid_argument("compute_observables: need at least two lags");
    const std::size_t max_lag = *std::max_element(cfg.lags.begin(), cfg.lags.end());
    if (rs.size() <= std::max(max_lag, cfg.corr_lag + cfg.max_separation + 1)) {
        throw std::invalid_argument("compute_observables: series too short");
    }

    // log|dx| per lag, shared across the q grid; zero increments contribute nothing to m_q.
    std::vector<std::vector<double>> log_abs;
    std::vector<std::size_t> counts;
    for (std::size_t h : cfg.lags) {
        std::vector<double> logs;
        logs.reserve(rs.size() - h);
        for (std::size_t i = 0; i + h < rs.size(); ++i) {
            const double d = std::abs(rs.x[i + h] - rs.x[i]);
            if (d > 0.0) logs.push_back(std::log(d));
        }
        log_abs.push_back(std::move(logs));
        counts.push_back(rs.size() - h);
    }

    auto fit_q = [&](double q) {
        std::vector<double> moments;
        for (std::size_t j = 0; j < cfg.lags.size(); ++j) {
            double acc = 0.0;
            for (double l : log_abs[j]) acc += std::exp(q * l);
            moments.push_back(acc / static_cast<double>(counts[j]));
        }
        return scaling_fit_from_moments(q, cfg.lags, moments);
    };

    ObservableSet obs;
    for (double q : cfg.q_grid) obs.a_hat.push_back(fit_q(q));
    obs.c1_hat = std::exp(fit_q(1.0).log_c_hat);
    obs.c2_hat = std::exp(fit_q(2.0).log_c_hat);

    const std::vector<double> absinc = abs_increments(rs, cfg.corr_lag);
    for (std::size_t t = 1; t <= cfg.max_separation; ++t) {
        obs.rho_t.push_back(static_cast<double>(t));
        obs.rho_hat.push_back(correlation_at(absinc, t));
    }
    return obs;
}

std::vector<SubperiodObservables> subperiod_analysis(const ReturnSeries& rs, std::size_t window_years,
                                                     std::size_t step_years, const ObservableConfig& cfg) {
    if (window_years == 0 || step_years == 0) throw std::invalid_argument("subperiod_analysis: years must be >= 1");
    const std::size_t window = window_years * kTradingDaysPerYear;
    const std::size_t step = step_years * kTradingDaysPerYear;
    if (window > rs.size()) throw std::invalid_argument("subperiod_analysis: series shorter than one window");

    std::vector<SubperiodObservables> out;
    for (std::size_t start = 0; start + window <= rs.size(); start += step) {
        ReturnSeries sub;
        sub.x.assign(rs.x.begin() + static_cast<std::ptrdiff_t>(start),
                     rs.x.begin() + static_cast<std::ptrdiff_t>(start + window));
        sub.offset = rs.offset + start;
        out.push_back({start, window, compute_observables(sub, cfg)});
    }
    return out;
}

}  // namespace shockvol
