#include <doctest.h>

#include <cmath>
#include <vector>

#include "shockvol/rng.hpp"
#include "shockvol/stats.hpp"

using namespace shockvol;

TEST_SUITE("stats") {

TEST_CASE("ols recovers an exact line") {
    const std::vector<double> x{0, 1, 2, 3};
    const std::vector<double> y{1, 3, 5, 7};
    const stats::LinearFit f = stats::ols(x, y);
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.r_squared == doctest::Approx(1.0));
}

TEST_CASE("pearson is NaN on zero variance and 1 on identical sequences") {
    const std::vector<double> a{1, 2, 3, 5};
    const std::vector<double> c{4, 4, 4, 4};
    CHECK(stats::pearson(a, a) == doctest::Approx(1.0));
    CHECK(std::isnan(stats::pearson(a, c)));
}

TEST_CASE("quantile interpolates") {
    CHECK(stats::quantile({4, 1, 3, 2}, 0.5) == doctest::Approx(2.5));
    CHECK(stats::quantile({4, 1, 3, 2}, 0.0) == 1.0);
    CHECK(stats::quantile({4, 1, 3, 2}, 1.0) == 4.0);
}

TEST_CASE("Kolmogorov survival at tabulated points") {
    // Q(1.36) ~ 0.0494 and Q(1.63) ~ 0.0098 (classical 5% and 1% critical values).
    CHECK(stats::kolmogorov_survival(1.3581) == doctest::Approx(0.05).epsilon(2e-3));
    CHECK(stats::kolmogorov_survival(1.6276) == doctest::Approx(0.01).epsilon(2e-3));
}

TEST_CASE("KS tests accept matching and reject shifted samples") {
    Rng rng(11);
    std::vector<double> a, b, shifted;
    for (int i = 0; i < 5000; ++i) {
        a.push_back(rng.normal());
        b.push_back(rng.normal());
        shifted.push_back(rng.normal() + 0.3);
    }
    CHECK(stats::ks_test(a, stats::normal_cdf).p_value > 0.01);
    CHECK(stats::ks_test(shifted, stats::normal_cdf).p_value < 1e-6);
    CHECK(stats::ks_test_two_sample(a, b).p_value > 0.01);
    CHECK(stats::ks_test_two_sample(a, shifted).p_value < 1e-6);
}

TEST_CASE("Gaussian KDE integrates to one") {
    Rng rng(5);
    std::vector<double> xs;
    for (int i = 0; i < 2000; ++i) xs.push_back(rng.normal());
    std::vector<double> grid;
    for (int k = 0; k <= 800; ++k) grid.push_back(-8.0 + 16.0 * k / 800.0);
    const auto dens = stats::gaussian_kde(xs, grid, stats::silverman_bandwidth(xs));
    double mass = 0.0;
    for (double d : dens) mass += d * 16.0 / 800.0;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("rng streams are reproducible and distinct") {
    Rng a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    const auto va = a(), vb = b(), vc = c(), vd = d();
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(va != vd);
    Rng u(1);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform();
        CHECK((x > 0.0 && x < 1.0));
    }
}

}
