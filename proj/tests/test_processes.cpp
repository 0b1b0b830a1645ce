#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "harris/processes.hpp"
#include "harris/statcheck.hpp"

using namespace harris;

TEST(Ar1, ValidatesConfig) {
    ARConfig cfg;
    cfg.p = 0.0;
    EXPECT_THROW(simulate_ar1(cfg, 1), parameter_error);
    cfg.p = 1.5;
    EXPECT_THROW(simulate_ar1(cfg, 1), parameter_error);
    cfg.p = 0.5;
    cfg.horizon = 0;
    EXPECT_THROW(simulate_ar1(cfg, 1), parameter_error);
    cfg.horizon = 3;
    cfg.n_paths = 0;
    EXPECT_THROW(simulate_ar1(cfg, 1), parameter_error);
    cfg.n_paths = 2;
    cfg.c_scale = 2.0;
    EXPECT_THROW(simulate_ar1(cfg, 1), parameter_error);
    cfg.c_scale.reset();
    EXPECT_THROW(simulate_ar1_scaled(cfg, 1), parameter_error);
    cfg.c_scale = -1.0;
    EXPECT_THROW(simulate_ar1_scaled(cfg, 1), parameter_error);
}

TEST(Ar1, ShapeAndProvenance) {
    ARConfig cfg;
    cfg.k = 2;
    cfg.horizon = 50;
    cfg.n_paths = 100;
    const auto paths = simulate_ar1(cfg, 1);
    ASSERT_EQ(paths.size(), 100u);
    for (std::size_t i = 0; i < paths.size(); ++i) {
        EXPECT_EQ(paths[i].path_id, i);
        EXPECT_EQ(paths[i].seed, path_seed(1, i));
        EXPECT_EQ(paths[i].values.size(), 51u);
        EXPECT_EQ(paths[i].times.back(), 50.0);
        EXPECT_TRUE(paths[i].clock.empty());
    }
}

TEST(Ar1, DegenerateResetIsIid) {
    // p = 1: every step is a fresh maximum of k innovations.
    ARConfig cfg;
    cfg.p = 1.0;
    cfg.k = 3;
    cfg.horizon = 5;
    cfg.n_paths = 20000;
    const auto paths = simulate_ar1(cfg, 17);
    const auto e = exponential(1.0);
    auto cdf_k = [&](double x) { return std::pow(e.cdf(x), 3); };
    for (std::size_t n = 1; n <= 5; ++n) {
        EXPECT_TRUE(stat::ks_one_sample(marginal_at(paths, n), cdf_k).pass) << n;
    }
    // consecutive steps uncorrelated
    double sxy = 0, sx = 0, sy = 0, sxx = 0, syy = 0;
    for (const auto& p : paths) {
        const double x = p.values[2], y = p.values[3];
        sxy += x * y; sx += x; sy += y; sxx += x * x; syy += y * y;
    }
    const double n = static_cast<double>(paths.size());
    const double corr = (sxy / n - sx * sy / n / n) /
                        std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
    EXPECT_LT(std::abs(corr), 4.0 / std::sqrt(n));
}

TEST(Ar1, StationaryWhenComponentIsHarrisMaxOfInnovation) {
    const double p = 0.5;
    const int k = 2;
    ARConfig cfg;
    cfg.p = p;
    cfg.k = k;
    cfg.horizon = 200;
    cfg.n_paths = 10000;
    cfg.component = harris_max_transform(exponential(1.0), HarrisParams{1.0 / p, k});
    cfg.innovation = AnyDistribution(exponential(1.0));
    const auto paths = simulate_ar1(cfg, 2718);
    EXPECT_TRUE(stat::ks_two_sample(marginal_at(paths, 1), marginal_at(paths, 200)).pass);
}

TEST(Ar1, UntransformedControlAccumulates) {
    ARConfig cfg;
    cfg.p = 0.5;
    cfg.k = 1;
    cfg.horizon = 200;
    cfg.n_paths = 10000;
    const auto paths = simulate_ar1(cfg, 99);
    const auto s1 = marginal_at(paths, 1);
    const auto s200 = marginal_at(paths, 200);
    // S_200 stochastically dominates S_1: its empirical cdf lies below.
    for (double x = 0.1; x < 6.0; x += 0.1) {
        EXPECT_LE(stat::empirical_cdf(s200, x), stat::empirical_cdf(s1, x) + 0.015) << x;
    }
    EXPECT_FALSE(stat::ks_two_sample(s1, s200).pass);
}

TEST(Ar1, StationaryInnovationHelper) {
    const auto comp = exponential(1.0);
    const auto innov = stationary_innovation(comp, 0.25, 2);
    // its Harris(4, 2)-maximum is the component again
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        EXPECT_NEAR(harris_max_cdf(innov, {4.0, 2}, x), comp.cdf(x), 1e-14);
    }
}

TEST(Ar1Scaled, DegenerateKeepIsGeometricDecay) {
    ARConfig cfg;
    cfg.p = 1.0;
    cfg.k = 2;
    cfg.c_scale = 2.0;
    cfg.horizon = 30;
    cfg.n_paths = 50;
    for (const auto& path : simulate_ar1_scaled(cfg, 4)) {
        for (std::size_t n = 0; n <= 30; ++n) {
            EXPECT_EQ(path.values[n], std::pow(0.5, static_cast<double>(n)) * path.values[0]);
        }
    }
    cfg.c_scale = 3.0;
    for (const auto& path : simulate_ar1_scaled(cfg, 4)) {
        for (std::size_t n = 0; n <= 30; ++n) {
            EXPECT_NEAR(path.values[n], std::pow(3.0, -static_cast<double>(n)) * path.values[0],
                        1e-13 * path.values[0]);
        }
    }
}

TEST(Ar1Scaled, UnitScaleIsRunningMaximum) {
    ARConfig cfg;
    cfg.p = 0.3;
    cfg.k = 2;
    cfg.c_scale = 1.0;
    cfg.horizon = 100;
    cfg.n_paths = 100;
    for (const auto& path : simulate_ar1_scaled(cfg, 5)) {
        for (std::size_t n = 1; n <= 100; ++n) EXPECT_GE(path.values[n], path.values[n - 1]);
    }
}

TEST(Ar1Scaled, SemistableLawIsStationary) {
    const double a = 2.0, c = 2.0;
    const int k = 2;
    ARConfig cfg;
    cfg.p = 1.0 / a;
    cfg.k = k;
    cfg.c_scale = c;
    cfg.horizon = 200;
    cfg.n_paths = 10000;
    cfg.component = PsiDistribution(make_semistable_psi(a, c, 0.05), HarrisParams{1.0, k});
    const auto paths = simulate_ar1_scaled(cfg, 314);
    EXPECT_TRUE(stat::ks_two_sample(marginal_at(paths, 1), marginal_at(paths, 200)).pass);
}

TEST(Ar1, ThreadCountDoesNotChangeOutput) {
    ARConfig cfg;
    cfg.p = 0.3;
    cfg.k = 3;
    cfg.horizon = 40;
    cfg.n_paths = 333;
    cfg.component = harris_max_transform(weibull(2.0, 1.0), HarrisParams{3.0, 3});
    const auto one = simulate_ar1(cfg, 77, 1);
    const auto four = simulate_ar1(cfg, 77, 4);
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i].values, four[i].values);
}

TEST(ExtremalProcess, MarginalClosedForm) {
    EPConfig cfg;
    cfg.xi = power_exponent(1.0);
    EXPECT_DOUBLE_EQ(ep_marginal_cdf(cfg, 1.0, 1.0), 0.5);
    EXPECT_EQ(ep_marginal_cdf(cfg, 0.0, 3.0), 1.0);
    EXPECT_EQ(ep_marginal_cdf(cfg, 1.0, 0.0), 0.0);
    EXPECT_EQ(ep_marginal_cdf(cfg, 1.0, -1.0), 0.0);
    EXPECT_THROW(ep_marginal_cdf(cfg, -1.0, 1.0), domain_error);
}

TEST(ExtremalProcess, RemarkOnGammaMixtureMatchesPsiForm) {
    for (int k : {1, 2, 4}) {
        EPConfig cfg;
        cfg.alpha = 1.7;
        cfg.beta = 0.5;
        cfg.xi = power_exponent(2.0, 0.8);
        const double t = 1.0 / (k * cfg.beta);
        const auto psi = power_psi(2.0, 0.8 * cfg.alpha);
        for (int i = 1; i <= 1000; ++i) {
            const double x = std::exp(-5.0 + 10.0 * i / 1000.0);
            EXPECT_NEAR(ep_marginal_cdf(cfg, t, x), psi_cdf(psi, {1.0, k}, x), 1e-12);
        }
    }
}

TEST(ExtremalProcess, ZeroClockStaysAtBottom) {
    Rng rng = make_rng(1);
    const auto xi = power_exponent(1.0);
    EXPECT_EQ(draw_max_increment(xi, 0.0, rng), 0.0);
    EPConfig cfg;
    cfg.time_grid = {0.0, 1.0};
    cfg.n_paths = 10;
    for (const auto& p : simulate_gamma_ep(cfg, 3)) {
        EXPECT_EQ(p.values[0], 0.0);
        EXPECT_EQ(p.clock[0], 0.0);
    }
}

TEST(ExtremalProcess, PathsNonDecreasing) {
    EPConfig cfg;
    cfg.xi = power_exponent(2.0);
    cfg.time_grid = {0.1, 0.2, 0.5, 1.0, 1.5, 2.0, 4.0};
    cfg.n_paths = 2000;
    for (const auto& p : simulate_gamma_ep(cfg, 11)) {
        for (std::size_t j = 1; j < p.values.size(); ++j) {
            EXPECT_GE(p.values[j], p.values[j - 1]);
            EXPECT_GE(p.clock[j], p.clock[j - 1]);
        }
    }
}

TEST(ExtremalProcess, MarginalMatchesByKs) {
    EPConfig cfg;
    cfg.xi = power_exponent(1.0);
    cfg.time_grid = {1.0};
    cfg.n_paths = 100000;
    const auto paths = simulate_gamma_ep(cfg, 123);
    const auto r = stat::ks_one_sample(marginal_at(paths, 0), [](double x) { return x / (1.0 + x); });
    EXPECT_TRUE(r.pass) << r.statistic;
    EXPECT_LT(r.critical_value_1pct, 0.00516);
}

TEST(ExtremalProcess, GammaClockMean) {
    EPConfig cfg;
    cfg.alpha = 2.0;
    cfg.beta = 0.7;
    cfg.time_grid = {0.5, 1.0, 3.0};
    cfg.n_paths = 50000;
    const auto paths = simulate_gamma_ep(cfg, 8);
    for (std::size_t j = 0; j < cfg.time_grid.size(); ++j) {
        const auto [mean, se] = stat::mean_and_stderr(clock_at(paths, j));
        EXPECT_LT(std::abs(mean - cfg.alpha * cfg.beta * cfg.time_grid[j]), 3.0 * se);
    }
}

TEST(ExtremalProcess, BisectionInverseMatchesClosedForm) {
    const auto closed = power_exponent(2.0, 1.5);
    const ExponentFunction numeric([](double x) { return 1.5 * std::pow(x, -2.0); }, 0.0);
    EXPECT_FALSE(numeric.has_closed_form_inverse());
    for (double y : {1e-3, 0.1, 1.0, 10.0, 1e4}) {
        EXPECT_NEAR(numeric.inverse(y), closed.inverse(y), 1e-9 * std::max(1.0, closed.inverse(y)));
    }
    EXPECT_EQ(numeric.inverse(kInf), 0.0);
    EXPECT_EQ(numeric.inverse(0.0), kInf);
}

TEST(ExtremalProcess, ExponentFromBaseRecoversIt) {
    const auto w = weibull(2.0, 1.0);
    const auto xi = exponent_from(w);
    for (double x : {0.1, 0.5, 1.0, 2.0}) {
        EXPECT_NEAR(std::exp(-xi(x)), w.cdf(x), 1e-15);
        EXPECT_NEAR(xi.inverse(xi(x)), x, 1e-12);
    }
}

TEST(ExtremalProcess, Validation) {
    EPConfig cfg;
    cfg.alpha = 0.0;
    EXPECT_THROW(simulate_gamma_ep(cfg, 1), parameter_error);
    cfg.alpha = 1.0;
    cfg.time_grid = {1.0, 0.5};
    EXPECT_THROW(simulate_gamma_ep(cfg, 1), parameter_error);
    cfg.time_grid = {};
    EXPECT_THROW(simulate_gamma_ep(cfg, 1), parameter_error);
}

TEST(ExtremalProcess, ThreadCountDoesNotChangeOutput) {
    EPConfig cfg;
    cfg.time_grid = {0.5, 1.0, 2.0};
    cfg.n_paths = 1001;
    const auto one = simulate_gamma_ep(cfg, 5, 1);
    const auto three = simulate_gamma_ep(cfg, 5, 3);
    for (std::size_t i = 0; i < one.size(); ++i) {
        EXPECT_EQ(one[i].values, three[i].values);
        EXPECT_EQ(one[i].clock, three[i].clock);
    }
}
