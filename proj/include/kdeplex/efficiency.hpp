#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "kdeplex/kde.hpp"
#include "kdeplex/sample.hpp"

namespace kdeplex {

// Probability of a positive return under the KDE: 1 - F_h(0), i.e.
// (1/n) sum Phi(X_i / h).
double prob_positive(const KernelDensity& kd);

// Joint law of the signs of two consecutive returns.
struct SignTransitions {
    double pp;  // P(+, +)
    double pm;  // P(+, -)
    double mp;  // P(-, +)
    double mm;  // P(-, -)
};

struct MarketInfoResult {
    double bandwidth = 0.0;
    double p_pos = 0.0;   // P(first return > 0)
    double p_neg = 0.0;
    double pi_pos = 0.0;  // P(next > 0 | previous > 0)
    double pi_neg = 0.0;  // P(next > 0 | previous < 0)
    double info_bits = 0.0;
    int lag_length = 1;
};

// Market information in bits for a sign-transition law:
//   I = -sum_i p_i log2(p_i / 2)
//       + sum_i [ p_i pi_i log2(p_i pi_i) + p_i (1 - pi_i) log2(p_i (1 - pi_i)) ]
// with 0 log 0 := 0. Zero when both conditional probabilities are 1/2.
// Throws DegenerateData when either marginal is below 1e-12.
MarketInfoResult market_information(const SignTransitions& joint);

// Consecutive pairs (X_t, X_{t+1}) smoothed by a product Gaussian kernel
// with bandwidth h per coordinate:
//   P(+, +) = 1/(n-1) sum_t Phi(X_t / h) Phi(X_{t+1} / h), and so on.
// As h -> 0 this reduces to transition counting with zeros split evenly.
SignTransitions kernel_sign_transitions(std::span<const double> returns, double h);

// Needs at least 3 returns.
MarketInfoResult market_information(const Sample& sample, double h);

// Empirical (h -> 0) market information of a +/-1 sign sequence.
double counting_market_information(std::span<const int> signs);

// Upper quantiles of the market information of i.i.d. fair sign sequences.
struct NullBands {
    std::size_t n = 0;
    std::map<double, double> quantiles;  // level -> bits, levels 0.95, 0.99, 0.999
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo null distribution. Trial t draws its signs from an engine
// seeded with (seed, t), so results do not depend on evaluation order.
// Requires n >= 3 and trials >= 1000.
NullBands null_bands(std::size_t n, std::size_t trials, std::uint64_t seed);

// Fair-sign sequence of trial `trial` as used by null_bands.
std::vector<int> null_sign_sequence(std::size_t n, std::uint64_t seed, std::uint64_t trial);

struct HurstConfig {
    std::size_t min_window = 8;
    // Largest window is log_prices.size() / max_window_divisor.
    std::size_t max_window_divisor = 4;
    double growth = 1.4142135623730951;  // ratio between consecutive window sizes
};

struct HurstResult {
    double exponent = 0.0;
    std::vector<std::size_t> window_sizes;
    std::vector<double> rs_values;
    double r_squared = 0.0;
};

// Rescaled-range estimate on the increments of a log-price path. For each
// window size the increments are cut into disjoint windows; each window
// contributes (max - min of the mean-adjusted cumulative sum) / (std), and
// the per-size average is regressed on the size in log-log scale. Windows
// with zero variance are skipped. Needs at least 64 points.
HurstResult hurst_exponent(std::span<const double> log_prices, const HurstConfig& config = {});

} // namespace kdeplex
