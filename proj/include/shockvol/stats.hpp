#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace shockvol::stats {

struct Summary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  ///< unbiased
    double stderr_mean() const;
};

/// Welford accumulator.
class RunningStats {
public:
    void push(double v);
    Summary summary() const;

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

Summary summarize(std::span<const double> xs);

/// Pearson correlation; returns NaN when either sequence has zero variance.
double pearson(std::span<const double> a, std::span<const double> b);

struct LinearFit {
    double slope;
    double intercept;
    double r_squared;
};

/// Ordinary least squares of y on x.
LinearFit ols(std::span<const double> x, std::span<const double> y);

/// Linear-interpolated sample quantile, p in [0, 1]. Sorts a copy.
double quantile(std::vector<double> xs, double p);

/// Kolmogorov limiting survival function Q(t) = 2 sum (-1)^{k-1} exp(-2 k^2 t^2).
double kolmogorov_survival(double t);

struct KsResult {
    double statistic;
    double p_value;
};

/// One-sample Kolmogorov-Smirnov test against a continuous cdf.
KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov test.
KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b);

/// Standard normal cdf.
double normal_cdf(double x);

/// Silverman rule-of-thumb bandwidth 0.9 min(sd, IQR/1.34) n^{-1/5}.
double silverman_bandwidth(std::span<const double> xs);

/// Gaussian kernel density estimate evaluated on `grid`.
std::vector<double> gaussian_kde(std::span<const double> xs, std::span<const double> grid, double bandwidth);

}  // namespace shockvol::stats
