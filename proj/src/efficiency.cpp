#include "kdeplex/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "kdeplex/errors.hpp"
#include "kdeplex/normal.hpp"
#include "kdeplex/search.hpp"

namespace kdeplex {
namespace {

constexpr double kMarginalFloor = 1e-12;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Type 7 (linear interpolation) quantile of sorted data.
double quantile_sorted(const std::vector<double>& sorted, double level) {
    const double pos = level * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

} // namespace

double prob_positive(const KernelDensity& kd) {
    const double h = kd.bandwidth();
    double sum = 0.0;
    for (double x : kd.sorted_values()) sum += normal_cdf(x / h);
    return sum / static_cast<double>(kd.size());
}

MarketInfoResult market_information(const SignTransitions& joint) {
    MarketInfoResult r;
    r.p_pos = joint.pp + joint.pm;
    r.p_neg = joint.mp + joint.mm;
    if (r.p_pos < kMarginalFloor || r.p_neg < kMarginalFloor)
        throw DegenerateData("market information undefined: one sign has vanishing probability");
    r.pi_pos = joint.pp / r.p_pos;
    r.pi_neg = joint.mp / r.p_neg;

    const double p[2] = {r.p_pos, r.p_neg};
    const double pi[2] = {r.pi_pos, r.pi_neg};
    double info = 0.0;
    for (int i = 0; i < 2; ++i) info -= xlog2x(p[i]) - p[i];  // -p log2(p / 2)
    for (int i = 0; i < 2; ++i) info += xlog2x(p[i] * pi[i]) + xlog2x(p[i] * (1.0 - pi[i]));
    r.info_bits = info;
    return r;
}

SignTransitions kernel_sign_transitions(std::span<const double> returns, double h) {
    if (returns.size() < 3) throw InvalidInput("market information needs at least 3 returns");
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidInput("bandwidth must be positive and finite");
    SignTransitions t{0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i + 1 < returns.size(); ++i) {
        const double a = normal_cdf(returns[i] / h);
        const double b = normal_cdf(returns[i + 1] / h);
        const double na = normal_cdf(-returns[i] / h);
        const double nb = normal_cdf(-returns[i + 1] / h);
        t.pp += a * b;
        t.pm += a * nb;
        t.mp += na * b;
        t.mm += na * nb;
    }
    const double pairs = static_cast<double>(returns.size() - 1);
    t.pp /= pairs;
    t.pm /= pairs;
    t.mp /= pairs;
    t.mm /= pairs;
    return t;
}

MarketInfoResult market_information(const Sample& sample, double h) {
    MarketInfoResult r = market_information(kernel_sign_transitions(sample.values(), h));
    r.bandwidth = h;
    return r;
}

double counting_market_information(std::span<const int> signs) {
    if (signs.size() < 3) throw InvalidInput("market information needs at least 3 signs");
    double counts[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (std::size_t i = 0; i + 1 < signs.size(); ++i) {
        counts[signs[i] > 0 ? 0 : 1][signs[i + 1] > 0 ? 0 : 1] += 1.0;
    }
    const double pairs = static_cast<double>(signs.size() - 1);
    return market_information(SignTransitions{counts[0][0] / pairs, counts[0][1] / pairs, counts[1][0] / pairs,
                                              counts[1][1] / pairs})
        .info_bits;
}

std::vector<int> null_sign_sequence(std::size_t n, std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    std::mt19937_64 engine(seq);
    std::vector<int> signs(n);
    std::uint64_t bits = 0;
    int left = 0;
    for (auto& s : signs) {
        if (left == 0) {
            bits = engine();
            left = 64;
        }
        s = (bits & 1u) ? 1 : -1;
        bits >>= 1;
        --left;
    }
    return signs;
}

NullBands null_bands(std::size_t n, std::size_t trials, std::uint64_t seed) {
    if (n < 3) throw InvalidInput("null bands need series length n >= 3");
    if (trials < 1000) throw InvalidInput("null bands need at least 1000 trials");

    std::vector<double> index(trials);
    for (std::size_t t = 0; t < trials; ++t) index[t] = static_cast<double>(t);
    std::vector<double> info = evaluate_on_grid(index, [&](double t) {
        const auto signs = null_sign_sequence(n, seed, static_cast<std::uint64_t>(t));
        return counting_market_information(signs);
    });
    std::sort(info.begin(), info.end());

    NullBands bands;
    bands.n = n;
    bands.trials = trials;
    bands.seed = seed;
    for (double level : {0.95, 0.99, 0.999}) bands.quantiles[level] = std::max(0.0, quantile_sorted(info, level));
    return bands;
}

HurstResult hurst_exponent(std::span<const double> log_prices, const HurstConfig& config) {
    if (log_prices.size() < 64) throw InvalidInput("Hurst estimation needs at least 64 log-prices");
    if (config.min_window < 2 || config.max_window_divisor < 1 || !(config.growth > 1.0))
        throw InvalidInput("invalid Hurst window configuration");
    for (double v : log_prices) {
        if (!std::isfinite(v)) throw InvalidInput("log-prices must be finite");
    }

    std::vector<double> increments(log_prices.size() - 1);
    for (std::size_t i = 0; i + 1 < log_prices.size(); ++i) increments[i] = log_prices[i + 1] - log_prices[i];

    const std::size_t max_window = log_prices.size() / config.max_window_divisor;
    std::vector<std::size_t> ladder;
    for (double w = static_cast<double>(config.min_window); std::lround(w) <= static_cast<long>(max_window);
         w *= config.growth) {
        const auto size = static_cast<std::size_t>(std::lround(w));
        if (ladder.empty() || ladder.back() != size) ladder.push_back(size);
    }
    if (ladder.size() < 2) throw InvalidInput("Hurst window ladder has fewer than 2 sizes");

    HurstResult result;
    std::vector<double> cumulative;
    for (std::size_t w : ladder) {
        double total = 0.0;
        std::size_t used = 0;
        for (std::size_t start = 0; start + w <= increments.size(); start += w) {
            const auto window = std::span<const double>(increments).subspan(start, w);
            double mean = 0.0;
            for (double v : window) mean += v;
            mean /= static_cast<double>(w);
            double ss = 0.0;
            double run = 0.0;
            double lo = 0.0;
            double hi = 0.0;
            for (double v : window) {
                ss += (v - mean) * (v - mean);
                run += v - mean;
                lo = std::min(lo, run);
                hi = std::max(hi, run);
            }
            const double sd = std::sqrt(ss / static_cast<double>(w));
            if (!(sd > 0.0)) continue;
            total += (hi - lo) / sd;
            ++used;
        }
        if (used == 0) throw DegenerateData("every window of size " + std::to_string(w) + " has zero variance");
        result.window_sizes.push_back(w);
        result.rs_values.push_back(total / static_cast<double>(used));
    }

    // Ordinary least squares of log(R/S) on log(w).
    const std::size_t k = result.window_sizes.size();
    std::vector<double> x(k);
    std::vector<double> y(k);
    for (std::size_t i = 0; i < k; ++i) {
        x[i] = std::log(static_cast<double>(result.window_sizes[i]));
        y[i] = std::log(result.rs_values[i]);
    }
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(k);
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(k);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    result.exponent = sxy / sxx;
    result.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    if (!(result.exponent > 0.0 && result.exponent < 1.0))
        throw DegenerateData("rescaled-range slope " + std::to_string(result.exponent) + " is outside (0, 1)");
    return result;
}

} // namespace kdeplex
