// Acceptance suite: one PASS/FAIL/SKIP line per criterion, exit status 1 on any FAIL.
//
// Criterion 10 needs DJIA daily opening prices as a `date,price` CSV; set SHOCKVOL_DJIA_CSV
// to its path (or place it at data/djia.csv relative to the working directory).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "shockvol/calibrate.hpp"
#include "shockvol/empirics.hpp"
#include "shockvol/io.hpp"
#include "shockvol/model.hpp"
#include "shockvol/parallel.hpp"
#include "shockvol/stats.hpp"
#include "shockvol/theory.hpp"

using namespace shockvol;

namespace {

enum class Verdict { pass, fail, skip };

struct Outcome {
    Verdict verdict;
    std::string detail;
};

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

/// Paper estimates; sigma log-normal with E sigma = 0.108 and E sigma^2 = 0.0117.
SigmaLaw moment_matched_law(double e_sigma, double e_sigma_sq) {
    const double s2 = std::log(e_sigma_sq / (e_sigma * e_sigma));
    return SigmaLaw(LogNormalSigma{std::log(e_sigma) - 0.5 * s2, std::sqrt(s2)});
}

ModelParams paper_params() { return {0.16, 0.00097, moment_matched_law(0.108, 0.0117)}; }

const std::size_t kWorkers = resolve_workers(0);

Outcome c1_black_scholes() {
    const ModelParams p(0.5, 0.01, SigmaLaw::constant(1.0));
    const LogPricePath path = simulate_path(p, 10000, 1.0, 101);
    std::vector<double> inc;
    for (std::size_t j = 0; j + 1 < path.x_vals.size(); ++j) inc.push_back(path.x_vals[j + 1] - path.x_vals[j]);
    const double ks_p = stats::ks_test(inc, stats::normal_cdf).p_value;

    const double t = 10.0;
    stats::RunningStats second;
    for (std::uint64_t k = 0; k < 100000; ++k) {
        const double x = simulate_path(p, 10, 1.0, 102, k).x_vals.back();
        second.push(x * x / t);
    }
    const double ratio = second.summary().mean;
    const bool ok = ks_p > 0.01 && std::abs(ratio - 1.0) <= 0.02;
    return {ok ? Verdict::pass : Verdict::fail, "KS p=" + fmt(ks_p) + " (>0.01), E[X_t^2]/t=" + fmt(ratio, 5) + " (1+-0.02)"};
}

Outcome c2_martingale() {
    const ModelParams p = paper_params();
    const std::size_t n = 10000;
    const double T = 2000.0;
    std::vector<double> xt(n);
    parallel_for(n, kWorkers, [&](std::size_t k) { xt[k] = simulate_path(p, 2000, 1.0, 202, k).x_vals.back(); });
    stats::RunningStats m, sq;
    for (double x : xt) {
        m.push(x);
        sq.push(x * x / T);
    }
    const double c2 = large_time_variance(TheoryParams::from_model(p));
    const double z = m.summary().mean / m.summary().stderr_mean();
    const double rel = sq.summary().mean / c2 - 1.0;
    const bool ok = std::abs(z) <= 3.0 && std::abs(rel) <= 0.05;
    return {ok ? Verdict::pass : Verdict::fail,
            "mean/stderr=" + fmt(z, 3) + " (|.|<=3), E[X_T^2]/T / c^2 - 1=" + fmt(rel, 3) + " (|.|<=0.05)"};
}

Outcome c3_multiscaling() {
    const ModelParams p(0.25, 0.01, SigmaLaw::constant(1.0));
    const LogPricePath path = simulate_path(p, 1000000, 1.0, 303);
    const ReturnSeries rs = ReturnSeries::from_levels(path.x_vals);
    bool ok = true;
    std::string detail;
    for (double q : {0.5, 1.0, 2.0, 5.0, 6.0}) {
        const double tol = q < 4.0 ? 0.05 : 0.15;
        const double a_hat = scaling_regression(rs, q).a_hat;
        const double a = scaling_exponent(p.D, q);
        const bool good = std::abs(a_hat - a) <= tol;
        ok = ok && good;
        detail += "q=" + fmt(q, 2) + ": A_hat=" + fmt(a_hat) + " vs " + fmt(a) + " (+-" + fmt(tol, 2) + ")" + (good ? "" : " MISS") + "; ";
    }
    return {ok ? Verdict::pass : Verdict::fail, detail};
}

// m_q(h) / h^{A(q)} from i.i.d. draws of I_h, with m_q(h) = E|W|^q E I_h^{q/2}.
struct ConstantCheck {
    double estimate;
    double stderr_;
    double theory;
};

ConstantCheck constant_check(const ModelParams& p, double q, double h, std::size_t n, std::uint64_t seed) {
    const TheoryParams tp = TheoryParams::from_model(p);
    const std::size_t chunks = 16;
    std::vector<stats::RunningStats> parts(chunks);
    parallel_for(chunks, kWorkers, [&](std::size_t c) {
        Rng rng(seed, c);
        for (std::size_t i = 0; i < n / chunks; ++i) parts[c].push(std::pow(sample_time_change_increment(p, h, rng), q / 2.0));
    });
    long double sum = 0, sum2 = 0;
    std::size_t count = 0;
    for (const auto& part : parts) {
        const auto s = part.summary();
        sum += s.mean * s.n;
        sum2 += (s.variance * (s.n - 1) + s.mean * s.mean * s.n);
        count += s.n;
    }
    const double mean = static_cast<double>(sum / count);
    const double var = static_cast<double>((sum2 - sum * sum / count) / (count - 1));
    const double scale = abs_normal_moment(q) / std::pow(h, scaling_exponent(p.D, q));
    return {scale * mean, scale * std::sqrt(var / count), multiscaling_constant(tp, p.sigma_law.moment(q), q).value};
}

Outcome c4_constants() {
    // q = 1, 2 at the paper parameters. For q = 6 the moment is carried by windows that start
    // within a few h of a shock (probability ~ lambda h); lambda = 1 makes those visible in 10^6
    // draws while keeping the lambda h correction near 1e-3.
    const double h = 1e-3;
    const std::size_t n = 1000000;
    bool ok = true;
    std::string detail;
    const ModelParams paper = paper_params();
    const ModelParams fast(0.16, 1.0, moment_matched_law(0.108, 0.0117));
    const std::vector<std::pair<double, const ModelParams*>> cases{{1.0, &paper}, {2.0, &paper}, {6.0, &fast}};
    for (const auto& [q, params] : cases) {
        const ConstantCheck c = constant_check(*params, q, h, n, 404 + static_cast<std::uint64_t>(q));
        const double z = (c.estimate - c.theory) / c.stderr_;
        const bool good = std::abs(z) <= 3.0;
        ok = ok && good;
        detail += "q=" + fmt(q, 2) + " (lambda=" + fmt(params->lambda) + "): MC=" + fmt(c.estimate, 6) + " C_q=" + fmt(c.theory, 6) +
                  " z=" + fmt(z, 3) + (good ? "" : " MISS") + "; ";
    }
    return {ok ? Verdict::pass : Verdict::fail, detail};
}

Outcome c5_small_time() {
    const ModelParams p = paper_params();
    const TheoryParams tp = TheoryParams::from_model(p);
    const double h = 1e-3;
    Rng rng(505);
    std::vector<double> draws(100000);
    for (double& d : draws) d = rng.normal() * std::sqrt(sample_time_change_increment(p, h, rng) / h);
    std::vector<double> cdf_vals(draws.size());
    parallel_for(draws.size(), kWorkers, [&](std::size_t i) { cdf_vals[i] = small_time_cdf(tp, p.sigma_law, draws[i]); });
    std::vector<std::size_t> order(draws.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return draws[a] < draws[b]; });
    double ks = 0.0;
    const double n = static_cast<double>(draws.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        const double f = cdf_vals[order[r]];
        ks = std::max({ks, (r + 1) / n - f, f - r / n});
    }

    // Tail exponent from 10^7 draws: OLS of log P(|Z| > z) on log z over z in [6 s, 12 s].
    const std::size_t big = 10000000;
    const std::size_t chunks = 16;
    std::vector<std::vector<double>> abs_parts(chunks);
    parallel_for(chunks, kWorkers, [&](std::size_t c) {
        Rng r(506, c);
        abs_parts[c].resize(big / chunks);
        for (double& d : abs_parts[c]) d = std::abs(r.normal() * std::sqrt(sample_time_change_increment(p, h, r) / h));
    });
    std::vector<double> all;
    all.reserve(big);
    for (auto& part : abs_parts) all.insert(all.end(), part.begin(), part.end());
    double sumsq = 0.0;
    for (double a : all) sumsq += a * a;
    const double s_hat = std::sqrt(sumsq / static_cast<double>(all.size()));
    std::sort(all.begin(), all.end());
    std::vector<double> lz, lt;
    for (int k = 0; k <= 10; ++k) {
        const double z = 6.0 * s_hat * std::pow(2.0, k / 10.0);
        const auto above = all.end() - std::upper_bound(all.begin(), all.end(), z);
        lz.push_back(std::log(z));
        lt.push_back(std::log(static_cast<double>(above) / static_cast<double>(all.size())));
    }
    const double mc_slope = stats::ols(lz, lt).slope;
    const double quad_slope = std::log(small_time_tail(tp, p.sigma_law, 12.0 * s_hat) / small_time_tail(tp, p.sigma_law, 6.0 * s_hat)) /
                              std::log(2.0);
    const double qs = q_star(p.D).value;
    const bool ok = ks < 0.01 && std::abs(mc_slope + qs) <= 0.15 * qs && std::abs(quad_slope + qs) <= 0.15 * qs;
    return {ok ? Verdict::pass : Verdict::fail, "KS distance=" + fmt(ks) + " (<0.01), tail slope MC=" + fmt(mc_slope) +
                                                    " quadrature=" + fmt(quad_slope) + " vs -q*=" + fmt(-qs) + " (+-15%)"};
}

Outcome c6_autocorrelation() {
    const ModelParams p = paper_params();
    const TheoryParams tp = TheoryParams::from_model(p);
    const std::vector<std::size_t> ts{1, 5, 10, 50, 100, 400};
    const std::size_t n_paths = 200;
    std::vector<std::vector<double>> rho(ts.size(), std::vector<double>(n_paths));
    parallel_for(n_paths, kWorkers, [&](std::size_t k) {
        const ReturnSeries rs = simulate_return_series(p, 75, 606, k);
        for (std::size_t i = 0; i < ts.size(); ++i) rho[i][k] = vol_autocorrelation(rs, 1, ts[i]);
    });
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double lo = stats::quantile(rho[i], 0.025), hi = stats::quantile(rho[i], 0.975);
        const double th = rho_theoretical(tp, static_cast<double>(ts[i]));
        const bool good = th >= lo && th <= hi;
        ok = ok && good;
        detail += "t=" + std::to_string(ts[i]) + ": rho=" + fmt(th, 3) + " in [" + fmt(lo, 3) + "," + fmt(hi, 3) +
                  "] mean " + fmt(stats::summarize(rho[i]).mean, 3) + (good ? "" : " MISS") + "; ";
    }
    return {ok ? Verdict::pass : Verdict::fail, detail};
}

Outcome c7_calibration() {
    const TheoryParams truth{0.2, 0.005, 0.1, 0.011};
    FitOptions opt;
    opt.workers = kWorkers;
    const FitResult noiseless = fit(theoretical_observables(truth), {}, opt);
    const bool ok_a = noiseless.loss_value < 1e-8 && std::abs(noiseless.params.D - truth.D) <= 0.01;

    const ModelParams sim(truth.D, truth.lambda, moment_matched_law(truth.e_sigma, truth.e_sigma_sq));
    const FitResult long_fit = fit(compute_observables(simulate_return_series(sim, 750, 707, 0)), {}, opt);
    const bool ok_b = std::abs(long_fit.params.D - truth.D) <= 0.03;

    const ModelParams paper = paper_params();
    const FitResult paper_fit = fit(compute_observables(simulate_return_series(paper, 750, 708, 0)), {}, opt);
    const bool ok_c = std::abs(paper_fit.params.D - paper.D) <= 0.03;

    const bool ok = ok_a && ok_b && ok_c;
    return {ok ? Verdict::pass : Verdict::fail,
            "noiseless loss=" + fmt(noiseless.loss_value, 3) + " (<1e-8) D=" + fmt(noiseless.params.D, 6) + " lambda=" +
                fmt(noiseless.params.lambda) + " Es=" + fmt(noiseless.params.e_sigma) + " Es2=" + fmt(noiseless.params.e_sigma_sq) +
                "; 750y at truth D=" + fmt(long_fit.params.D) + " (0.2+-0.03); 750y at paper params D=" + fmt(paper_fit.params.D) +
                " (0.16+-0.03)"};
}

Outcome c8_mixing() {
    const ModelParams p(0.16, 1.0, SigmaLaw::constant(0.108));
    // Median of |X_1| from an independent sample of |W| sqrt(I_1).
    Rng mrng(808);
    std::vector<double> med_sample(2000000);
    for (double& v : med_sample) v = std::abs(mrng.normal()) * std::sqrt(sample_time_change_increment(p, 1.0, mrng));
    const double m = stats::quantile(std::move(med_sample), 0.5);

    bool ok = true;
    std::string detail = "m=" + fmt(m) + "; ";
    for (std::size_t c : {3u, 6u}) {
        const std::size_t n = 100000;
        std::vector<unsigned char> a(n), b(n);
        parallel_for(n, kWorkers, [&](std::size_t k) {
            const LogPricePath path = simulate_path(p, c + 1, 1.0, 809 + c, k);
            a[k] = std::abs(path.x_vals[1] - path.x_vals[0]) > m;
            b[k] = std::abs(path.x_vals[c + 1] - path.x_vals[c]) > m;
        });
        double pa = 0, pb = 0, pab = 0;
        for (std::size_t k = 0; k < n; ++k) {
            pa += a[k];
            pb += b[k];
            pab += a[k] * b[k];
        }
        pa /= n;
        pb /= n;
        pab /= n;
        // Delta-method standard error of pab - pa pb via its influence function.
        stats::RunningStats infl;
        for (std::size_t k = 0; k < n; ++k) infl.push(a[k] * b[k] - pb * a[k] - pa * b[k]);
        const double se = infl.summary().stderr_mean();
        const double gap = std::abs(pab - pa * pb);
        const double bound = std::exp(-p.lambda * (static_cast<double>(c) - 1.0)) + 4.0 * se;
        const bool good = gap <= bound;
        ok = ok && good;
        detail += "c=" + std::to_string(c) + ": |P(AB)-P(A)P(B)|=" + fmt(gap, 3) + " <= " + fmt(bound, 3) + (good ? "" : " MISS") + "; ";
    }
    return {ok ? Verdict::pass : Verdict::fail, detail};
}

Outcome c9_variability() {
    const ReturnSeries rs = simulate_return_series(paper_params(), 75, 909, 0);
    const auto windows = subperiod_analysis(rs, 30, 5);
    std::vector<double> a3;
    for (const auto& w : windows) {
        for (const ScalingFit& f : w.observables.a_hat) {
            if (f.q == 3.0) a3.push_back(f.a_hat);
        }
    }
    const auto [lo, hi] = std::minmax_element(a3.begin(), a3.end());
    const double spread = *hi - *lo;
    const bool ok = spread > 0.05;
    return {ok ? Verdict::pass : Verdict::fail, std::to_string(a3.size()) + " windows, A_hat(3) in [" + fmt(*lo) + "," + fmt(*hi) +
                                                    "], spread=" + fmt(spread) + " (>0.05), sd=" + fmt(std::sqrt(stats::summarize(a3).variance))};
}

Outcome c10_djia() {
    std::filesystem::path file;
    if (const char* env = std::getenv("SHOCKVOL_DJIA_CSV")) file = env;
    if (file.empty() && std::filesystem::exists("data/djia.csv")) file = "data/djia.csv";
    if (file.empty() || !std::filesystem::exists(file)) return {Verdict::skip, "no DJIA data (set SHOCKVOL_DJIA_CSV)"};
    const PriceSeries ps = io::read_price_csv(file);
    FitOptions opt;
    opt.workers = kWorkers;
    const FitResult r = fit(compute_observables(detrend(ps)), {}, opt);
    const bool ok = r.params.D >= 0.13 && r.params.D <= 0.19 && r.params.lambda >= 5e-4 && r.params.lambda <= 2e-3 &&
                    r.params.e_sigma >= 0.09 && r.params.e_sigma <= 0.13;
    return {ok ? Verdict::pass : Verdict::fail, "D=" + fmt(r.params.D) + " [0.13,0.19], lambda=" + fmt(r.params.lambda) +
                                                    " [5e-4,2e-3], Es=" + fmt(r.params.e_sigma) + " [0.09,0.13], loss=" + fmt(r.loss_value)};
}

struct Criterion {
    int id;
    const char* name;
    double max_seconds;  ///< 0 when no runtime bound is pinned
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

    const std::vector<Criterion> criteria{
        {1, "Black-Scholes reduction", 10.0, c1_black_scholes},
        {2, "martingale and variance law", 60.0, c2_martingale},
        {3, "multiscaling exponents", 120.0, c3_multiscaling},
        {4, "multiscaling constants", 120.0, c4_constants},
        {5, "small-time law", 0.0, c5_small_time},
        {6, "volatility autocorrelation", 300.0, c6_autocorrelation},
        {7, "calibration round trip", 0.0, c7_calibration},
        {8, "mixing inequality", 0.0, c8_mixing},
        {9, "subperiod variability", 0.0, c9_variability},
        {10, "DJIA estimates", 0.0, c10_djia},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {Verdict::fail, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.verdict == Verdict::pass && c.max_seconds > 0.0 && secs > c.max_seconds) {
            o.verdict = Verdict::fail;
            o.detail += " runtime over " + fmt(c.max_seconds) + " s";
        }
        const char* tag = o.verdict == Verdict::pass ? "PASS" : o.verdict == Verdict::fail ? "FAIL" : "SKIP";
        if (o.verdict == Verdict::fail) ++failures;
        std::printf("[%s] criterion %2d %-28s %7.1fs  %s\n", tag, c.id, c.name, secs, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
