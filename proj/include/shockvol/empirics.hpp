#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace shockvol {

inline constexpr std::size_t kTradingDaysPerYear = 250;

struct PriceSeries {
    std::vector<std::string> dates;
    std::vector<double> prices;

    /// Throws DataError on nonpositive prices or non-increasing dates (row numbers are 1-based data rows).
    void validate() const;
};

/// Detrended log-prices x_i; `offset` is the index of x_0 in the original price series.
struct ReturnSeries {
    std::vector<double> x;
    std::size_t offset = 0;

    std::size_t size() const { return x.size(); }
    /// Wraps an already detrended (or simulated) level series.
    static ReturnSeries from_levels(std::vector<double> levels, std::size_t offset = 0);
};

/// x_i = log s_i - mean(log s_{i-window}, ..., log s_{i-1}) for i >= window.
ReturnSeries detrend(const PriceSeries& ps, std::size_t window = 250);

/// m_q(h) = mean over i of |x_{i+h} - x_i|^q.
double empirical_moment(const ReturnSeries& rs, double q, std::size_t h);

struct ScalingFit {
    double q;
    double a_hat;
    double log_c_hat;
    double r_squared;
};

inline const std::vector<std::size_t>& default_lags() {
    static const std::vector<std::size_t> lags{1, 2, 3, 4, 5};
    return lags;
}

/// OLS of log m on log h for given (lag, moment) pairs; throws DegenerateDataError on a zero moment.
ScalingFit scaling_fit_from_moments(double q, std::span<const std::size_t> lags, std::span<const double> moments);

/// OLS of log m_q(h) on log h over `lags`.
ScalingFit scaling_regression(const ReturnSeries& rs, double q, std::span<const std::size_t> lags = default_lags());

/// Sample correlation of |x_{i+h} - x_i| and |x_{i+h+t} - x_{i+t}|.
double vol_autocorrelation(const ReturnSeries& rs, std::size_t h, std::size_t t);

struct EmpiricalDistribution {
    std::size_t lag;
    double s_hat;  ///< sample standard deviation of the lag returns
    std::vector<double> grid;
    std::vector<double> density;
    std::vector<double> z;
    std::vector<double> left_tail;
    std::vector<double> right_tail;
};

/// Gaussian KDE on [-3 s, 3 s] and raw-count tails on z in [s, 12 s] for returns over `lag`.
EmpiricalDistribution empirical_distribution(const ReturnSeries& rs, std::size_t lag, std::size_t grid_points = 121,
                                             std::size_t tail_points = 60);

/// Raw-count tails at explicit thresholds.
void empirical_tails(std::span<const double> returns, std::span<const double> z, std::vector<double>& left,
                     std::vector<double>& right);

struct ObservableConfig {
    std::vector<double> q_grid;        ///< q = k/4, k = 1..20
    std::vector<std::size_t> lags;     ///< 1..5
    std::size_t corr_lag = 1;          ///< h in rho_h(t)
    std::size_t max_separation = 400;  ///< t = 1..max_separation

    static ObservableConfig standard();
};

struct ObservableSet {
    double c1_hat = 0.0;
    double c2_hat = 0.0;
    std::vector<ScalingFit> a_hat;
    std::vector<double> rho_t;
    std::vector<double> rho_hat;

    /// Checks grid sizes and ranges; throws std::invalid_argument.
    void validate(std::size_t expected_q = 20, std::size_t expected_t = 400) const;
};

ObservableSet compute_observables(const ReturnSeries& rs, const ObservableConfig& cfg = ObservableConfig::standard());

struct SubperiodObservables {
    std::size_t start;  ///< first index within the return series
    std::size_t length;
    ObservableSet observables;
};

/// Observables on rolling windows of `window_years` advanced by `step_years` (250 trading days per year).
std::vector<SubperiodObservables> subperiod_analysis(const ReturnSeries& rs, std::size_t window_years = 30,
                                                     std::size_t step_years = 5,
                                                     const ObservableConfig& cfg = ObservableConfig::standard());

}  // namespace shockvol
