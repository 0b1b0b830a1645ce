#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "harris/dist_core.hpp"
#include "harris/statcheck.hpp"

using namespace harris;

namespace {

std::vector<BaseDistribution> all_families() {
    return {exponential(1.0), weibull(1.7, 2.0), pareto(2.5, 1.5), frechet(3.0, 0.5),
            uniform(-1.0, 3.0)};
}

} // namespace

TEST(DistCore, ExponentialSpotValues) {
    const auto d = exponential(1.0);
    EXPECT_NEAR(d.cdf(std::log(2.0)), 0.5, 1e-15);
    EXPECT_NEAR(d.quantile(0.5), 0.693147180559945309, 1e-15);
}

TEST(DistCore, UniformSpotValues) {
    const auto d = uniform(0.0, 1.0);
    EXPECT_DOUBLE_EQ(d.cdf(0.25), 0.25);
    EXPECT_DOUBLE_EQ(d.quantile(0.75), 0.75);
}

TEST(DistCore, Limits) {
    for (const auto& d : all_families()) {
        EXPECT_EQ(d.cdf(-kInf), 0.0) << to_string(d.family());
        EXPECT_EQ(d.cdf(kInf), 1.0) << to_string(d.family());
        EXPECT_EQ(d.quantile(0.0), d.support().lower);
        EXPECT_EQ(d.quantile(1.0), d.support().upper);
        EXPECT_EQ(d.cdf(d.support().lower), 0.0);
    }
}

TEST(DistCore, SurvivalComplementsCdf) {
    for (const auto& d : all_families()) {
        for (int i = 0; i <= 200; ++i) {
            const double x = d.quantile(i / 200.0 * 0.999999);
            EXPECT_NEAR(d.sf(x) + d.cdf(x), 1.0, 1e-14);
            EXPECT_NEAR(d.sf(x + 0.01) + d.cdf(x + 0.01), 1.0, 1e-14);
        }
    }
}

TEST(DistCore, QuantileRoundTripOnPercentiles) {
    for (const auto& d : all_families()) {
        for (int i = 1; i <= 99; ++i) {
            const double q = i / 100.0;
            EXPECT_LT(std::abs(d.cdf(d.quantile(q)) - q), 1e-9) << to_string(d.family()) << " q=" << q;
        }
    }
}

TEST(DistCore, QuantileInvertsCdfRelative) {
    for (const auto& d : all_families()) {
        for (int i = 1; i < 100; ++i) {
            const double x = d.quantile(i / 100.0);
            EXPECT_NEAR(d.quantile(d.cdf(x)), x, 1e-9 * std::max(1.0, std::abs(x)));
        }
    }
}

TEST(DistCore, CdfMonotoneOnRandomGrids) {
    Rng rng = make_rng(11);
    for (const auto& d : all_families()) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> xs(500);
            for (auto& x : xs) x = -5.0 + 20.0 * uniform_open(rng);
            std::sort(xs.begin(), xs.end());
            for (std::size_t i = 1; i < xs.size(); ++i) EXPECT_LE(d.cdf(xs[i - 1]), d.cdf(xs[i]));
        }
    }
}

TEST(DistCore, ParameterValidation) {
    EXPECT_THROW(exponential(0.0), parameter_error);
    EXPECT_THROW(exponential(-1.0), parameter_error);
    EXPECT_THROW(weibull(1.0, 0.0), parameter_error);
    EXPECT_THROW(pareto(-2.0, 1.0), parameter_error);
    EXPECT_THROW(frechet(1.0, std::nan("")), parameter_error);
    EXPECT_THROW(uniform(1.0, 1.0), parameter_error);
    try {
        exponential(-1.0);
    } catch (const parameter_error& e) {
        EXPECT_EQ(e.parameter(), "rate");
    }
}

TEST(DistCore, QuantileDomain) {
    const auto d = exponential(1.0);
    EXPECT_THROW(d.quantile(-0.1), domain_error);
    EXPECT_THROW(d.quantile(1.5), domain_error);
}

TEST(DistCore, DrawEmpty) {
    Rng rng = make_rng(1);
    EXPECT_TRUE(draw(exponential(1.0), rng, 0).empty());
}

TEST(DistCore, DrawDeterministic) {
    Rng r1 = make_rng(42);
    Rng r2 = make_rng(42);
    EXPECT_EQ(draw(weibull(2.0, 1.0), r1, 1000), draw(weibull(2.0, 1.0), r2, 1000));
}

TEST(DistCore, DrawMatchesCdfByKs) {
    std::uint64_t seed = 100;
    for (const auto& d : all_families()) {
        Rng rng = make_rng(seed++);
        const auto xs = draw(d, rng, 100000);
        const auto r = stat::ks_one_sample(xs, [&](double x) { return d.cdf(x); });
        EXPECT_TRUE(r.pass) << to_string(d.family()) << " D=" << r.statistic;
        EXPECT_LT(r.critical_value_1pct, 0.00516);
    }
}

TEST(DistCore, AnyDistributionForwards) {
    const AnyDistribution any = pareto(2.0, 1.0);
    const auto direct = pareto(2.0, 1.0);
    for (double x : {0.5, 1.0, 1.5, 10.0}) {
        EXPECT_EQ(any.cdf(x), direct.cdf(x));
        EXPECT_EQ(any.sf(x), direct.sf(x));
    }
    EXPECT_EQ(any.quantile(0.3), direct.quantile(0.3));
    EXPECT_EQ(any.support().lower, 1.0);
}
