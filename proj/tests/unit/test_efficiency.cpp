#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kdeplex/efficiency.hpp"
#include "kdeplex/errors.hpp"
#include "kdeplex/kde.hpp"
#include "support/oracles.hpp"

using namespace kdeplex;

TEST(ProbPositive, HandValues) {
    EXPECT_DOUBLE_EQ(prob_positive(KernelDensity(std::vector<double>{0.0}, 1.0)), 0.5);
    EXPECT_NEAR(prob_positive(KernelDensity(std::vector<double>{1.0}, 1.0)), 0.841345, 1e-6);
    EXPECT_DOUBLE_EQ(prob_positive(KernelDensity(std::vector<double>{-2.0, -1.0, 1.0, 2.0}, 0.7)), 0.5);
}

TEST(ProbPositive, SmallBandwidthCountsSigns) {
    const std::vector<double> xs{-0.3, 0.1, 0.2, 0.5, -0.01};
    EXPECT_NEAR(prob_positive(KernelDensity(xs, 1e-9)), 0.6, 1e-12);
}

TEST(ProbPositive, NonincreasingUnderNegativeShift) {
    auto xs = oracle::normal_draws(300, 11, 0.02, 1.0);
    double last = 1.0;
    for (int step = 0; step < 20; ++step) {
        const double p = prob_positive(KernelDensity(xs, 0.1));
        EXPECT_LE(p, last);
        last = p;
        for (double& x : xs) x -= 0.05;
    }
}

TEST(MarketInformation, ZeroForFairTransitions) {
    const MarketInfoResult r = market_information(SignTransitions{0.25, 0.25, 0.25, 0.25});
    EXPECT_NEAR(r.info_bits, 0.0, 1e-9);
    EXPECT_DOUBLE_EQ(r.pi_pos, 0.5);
    EXPECT_DOUBLE_EQ(r.pi_neg, 0.5);
    EXPECT_EQ(r.lag_length, 1);
}

TEST(MarketInformation, AlternatingSignsCarryOneBit) {
    const MarketInfoResult r = market_information(SignTransitions{0.0, 0.5, 0.5, 0.0});
    EXPECT_NEAR(r.info_bits, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(r.pi_pos, 0.0);
    EXPECT_DOUBLE_EQ(r.pi_neg, 1.0);

    std::vector<double> alternating(101);
    for (std::size_t i = 0; i < alternating.size(); ++i) alternating[i] = i % 2 == 0 ? 0.01 : -0.01;
    EXPECT_NEAR(market_information(Sample(alternating), 1e-9).info_bits, 1.0, 1e-9);
}

TEST(MarketInformation, DegenerateMarginalThrows) {
    EXPECT_THROW(market_information(SignTransitions{1.0, 0.0, 0.0, 0.0}), DegenerateData);
    std::vector<double> up(50, 0.01);
    up[10] = 0.02;
    EXPECT_THROW(market_information(Sample(up), 1e-9), DegenerateData);
}

TEST(MarketInformation, NonnegativeAcrossBandwidths) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Sample s(oracle::normal_draws(200, seed, 0.001, 0.03));
        for (double h = 1e-5; h < 1.0; h *= 3.0) EXPECT_GE(market_information(s, h).info_bits, -1e-9);
    }
}

TEST(MarketInformation, SmallBandwidthMatchesCounting) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto r = oracle::normal_draws(365, 100 + seed, 0.0, 0.04);
        r[5] = 0.0;  // a zero return splits evenly
        const Sample s(r);
        const double h = 1e-9 * s.ml_std();
        EXPECT_NEAR(market_information(s, h).info_bits, oracle::counting_market_info(r), 1e-6);

        std::vector<int> signs;
        for (double x : r)
            if (x != 0.0) signs.push_back(x > 0 ? 1 : -1);
        const std::vector<double> nonzero(signs.begin(), signs.end());
        EXPECT_NEAR(counting_market_information(signs), oracle::counting_market_info(nonzero), 1e-12);
    }
}

TEST(MarketInformation, KernelTransitionsSumToOne) {
    const auto r = oracle::normal_draws(100, 3);
    const SignTransitions t = kernel_sign_transitions(r, 0.4);
    EXPECT_NEAR(t.pp + t.pm + t.mp + t.mm, 1.0, 1e-12);
    EXPECT_THROW(market_information(Sample(std::vector<double>{0.1, -0.2}), 0.1), InvalidInput);
}

TEST(NullBands, MonotoneSmallAndScaling) {
    const NullBands a = null_bands(365, 10000, 7);
    ASSERT_EQ(a.quantiles.size(), 3u);
    const double q95 = a.quantiles.at(0.95);
    const double q99 = a.quantiles.at(0.99);
    const double q999 = a.quantiles.at(0.999);
    EXPECT_LT(0.0, q95);
    EXPECT_LE(q95, q99);
    EXPECT_LE(q99, q999);
    EXPECT_LT(q999, 0.1);

    const NullBands b = null_bands(730, 10000, 7);
    for (const auto& [level, bits] : a.quantiles) {
        const double ratio = b.quantiles.at(level) / bits;
        EXPECT_GE(ratio, 0.3) << level;
        EXPECT_LE(ratio, 0.7) << level;
    }
}

TEST(NullBands, ReproducibleAndValidated) {
    const NullBands a = null_bands(50, 1000, 3);
    const NullBands b = null_bands(50, 1000, 3);
    EXPECT_EQ(a.quantiles, b.quantiles);
    EXPECT_EQ(null_sign_sequence(50, 3, 17), null_sign_sequence(50, 3, 17));
    EXPECT_NE(null_sign_sequence(50, 3, 17), null_sign_sequence(50, 3, 18));
    EXPECT_THROW(null_bands(2, 1000, 0), InvalidInput);
    EXPECT_THROW(null_bands(100, 999, 0), InvalidInput);
}

namespace {

// Anis-Lloyd expectation of R/S for i.i.d. Gaussian increments in a window of size w.
double expected_rs(std::size_t w) {
    const double n = static_cast<double>(w);
    double sum = 0.0;
    for (std::size_t i = 1; i < w; ++i) sum += std::sqrt((n - static_cast<double>(i)) / static_cast<double>(i));
    return std::exp(std::lgamma((n - 1.0) / 2.0) - std::lgamma(n / 2.0)) / std::sqrt(std::numbers::pi) * sum;
}

double ols_slope(const std::vector<std::size_t>& w, const std::vector<double>& y) {
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        mx += std::log(static_cast<double>(w[i]));
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(w.size());
    my /= static_cast<double>(w.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double dx = std::log(static_cast<double>(w[i])) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

} // namespace

TEST(Hurst, FractionalBrownianMotion) {
    std::vector<double> estimates;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        estimates.push_back(hurst_exponent(oracle::fbm_path(2000, 0.7, seed)).exponent);
    EXPECT_NEAR(oracle::median(estimates), 0.7, 0.08);
}

TEST(Hurst, RandomWalkFollowsSmallSampleExpectation) {
    std::vector<double> estimates;
    HurstResult last;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        last = hurst_exponent(oracle::gaussian_walk(2000, seed));
        estimates.push_back(last.exponent);
    }
    std::vector<double> expected;
    for (std::size_t w : last.window_sizes) expected.push_back(expected_rs(w));
    const double target = ols_slope(last.window_sizes, expected);
    EXPECT_GT(target, 0.5);
    EXPECT_NEAR(oracle::median(estimates), target, 0.03);
}

TEST(Hurst, LadderAndFit) {
    const HurstResult r = hurst_exponent(oracle::gaussian_walk(2000, 1));
    ASSERT_GE(r.window_sizes.size(), 2u);
    EXPECT_EQ(r.window_sizes.front(), 8u);
    EXPECT_LE(r.window_sizes.back(), 500u);
    EXPECT_EQ(r.window_sizes.size(), r.rs_values.size());
    EXPECT_NEAR(r.exponent, ols_slope(r.window_sizes, r.rs_values), 1e-12);
    EXPECT_GT(r.r_squared, 0.9);
}

TEST(Hurst, AffineInvariance) {
    const auto path = oracle::fbm_path(1000, 0.6, 4);
    std::vector<double> moved(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) moved[i] = -3.5 * path[i] + 12.0;
    EXPECT_NEAR(hurst_exponent(path).exponent, hurst_exponent(moved).exponent, 1e-9);
}

TEST(Hurst, Errors) {
    EXPECT_THROW(hurst_exponent(std::vector<double>(63, 0.0)), InvalidInput);
    EXPECT_THROW(hurst_exponent(std::vector<double>(200, 1.0)), DegenerateData);
    auto path = oracle::gaussian_walk(200, 0);
    path[3] = NAN;
    EXPECT_THROW(hurst_exponent(path), InvalidInput);
}
