#include "kdeplex/classic_bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <string>

#include "kdeplex/errors.hpp"

namespace kdeplex {
namespace {

constexpr double kDensityFloor = 1e-300;

struct Bounds {
    double lower;
    double upper;
};

Bounds validation_search_bounds(const Sample& sample, const SearchConfig& search) {
    validate(search);
    const double lower = search.lower.value_or(1e-3 * sample.ml_std());
    const double upper = search.upper.value_or(5.0 * sample.ml_std());
    if (!(upper > lower)) throw InvalidInput("search upper bound must exceed the lower bound");
    return {lower, upper};
}

// Fenwick tree over ranks 1..size.
class CountTree {
public:
    explicit CountTree(std::size_t size) : tree_(size + 1, 0) {}

    void add(std::size_t rank) {
        for (; rank < tree_.size(); rank += rank & (~rank + 1)) ++tree_[rank];
    }

    std::size_t prefix(std::size_t rank) const {
        std::size_t total = 0;
        for (; rank > 0; rank -= rank & (~rank + 1)) total += tree_[rank];
        return total;
    }

private:
    std::vector<std::size_t> tree_;
};

double k_tau_uniform(std::span<const double> z) {
    std::vector<double> sorted(z.begin(), z.end());
    std::sort(sorted.begin(), sorted.end());
    const double denom = static_cast<double>(z.size() + 1);
    double worst = 0.0;
    for (double zi : z) {
        const auto count = std::distance(sorted.begin(), std::upper_bound(sorted.begin(), sorted.end(), zi));
        worst = std::max(worst, std::fabs(zi - static_cast<double>(count) / denom));
    }
    return worst;
}

double k_tau_pairs(std::span<const double> z, std::size_t tau) {
    const std::size_t pairs = z.size() - tau;
    const auto first = z.first(pairs);
    const auto second = z.subspan(tau, pairs);

    std::vector<double> levels(second.begin(), second.end());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    auto rank_of = [&](double v) {
        return static_cast<std::size_t>(std::distance(levels.begin(), std::lower_bound(levels.begin(), levels.end(), v))) + 1;
    };

    std::vector<std::size_t> order(pairs);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return first[a] < first[b]; });

    // Dominance counts: insert each run of equal first coordinates before
    // querying it, so ties count as "<=".
    CountTree tree(levels.size());
    const double denom = static_cast<double>(pairs + 1);
    double worst = 0.0;
    std::size_t i = 0;
    while (i < pairs) {
        std::size_t j = i;
        while (j < pairs && first[order[j]] == first[order[i]]) tree.add(rank_of(second[order[j++]]));
        for (std::size_t k = i; k < j; ++k) {
            const std::size_t idx = order[k];
            const double count = static_cast<double>(tree.prefix(rank_of(second[idx])));
            worst = std::max(worst, std::fabs(first[idx] * second[idx] - count / denom));
        }
        i = j;
    }
    return worst;
}

} // namespace

double amise_bandwidth(std::size_t n, double curvature_roughness, const KernelSpec& kernel) {
    if (n == 0) throw InvalidInput("AMISE bandwidth needs n > 0");
    if (!(curvature_roughness > 0.0) || !std::isfinite(curvature_roughness))
        throw InvalidInput("curvature roughness must be positive and finite");
    const double mu2 = kernel.second_moment;
    return std::pow(kernel.roughness / (static_cast<double>(n) * mu2 * mu2 * curvature_roughness), 0.2);
}

double silverman_bandwidth(double sd, std::size_t n) { return 1.06 * sd * std::pow(static_cast<double>(n), -0.2); }

BandwidthResult solve_amise_fixed_point(const std::function<double(double)>& curvature, std::size_t n, double h0,
                                        double scale, const FixedPointConfig& config, const KernelSpec& kernel) {
    if (!(config.tol > 0.0) || config.max_iter < 1) throw InvalidInput("fixed-point tolerance and iterations must be positive");
    if (!(h0 > 0.0) || !(scale > 0.0)) throw InvalidInput("fixed-point start and scale must be positive");

    std::vector<TracePoint> trace;
    double h = h0;
    for (int iter = 0; iter < config.max_iter; ++iter) {
        const double r = curvature(h);
        if (!(r > 0.0) || !std::isfinite(r)) throw ConvergenceError("AMISE plug-in diverged: curvature not finite", trace);
        const double next = amise_bandwidth(n, r, kernel);
        const double step = std::fabs(next - h);
        trace.push_back({next, step});
        if (!(next > 1e-12 * scale) || !(next < 1e12 * scale))
            throw ConvergenceError("AMISE plug-in diverged to " + std::to_string(next), trace);
        h = next;
        if (step < config.tol * scale) return {BandwidthMethod::amise, h, step, std::move(trace)};
    }
    throw ConvergenceError("AMISE plug-in did not converge in " + std::to_string(config.max_iter) + " iterations",
                           std::move(trace));
}

BandwidthResult select_amise_plugin(const Sample& sample, const FixedPointConfig& config) {
    const double sd = sample.ml_std();
    auto curvature = [&](double h) { return KernelDensity(sample, h).curvature_roughness(); };
    return solve_amise_fixed_point(curvature, sample.size(), silverman_bandwidth(sd, sample.size()), sd, config);
}

double validation_log_likelihood(const Sample& sample, const ValidationSet& validation, double h) {
    const std::vector<double> f = KernelDensity(sample, h).pdf(validation.values());
    double total = 0.0;
    for (double v : f) total += std::log(std::max(v, kDensityFloor));
    return total;
}

BandwidthResult select_likelihood(const Sample& sample, const ValidationSet& validation, const SearchConfig& search) {
    const auto [lower, upper] = validation_search_bounds(sample, search);
    const std::vector<double> grid = geometric_grid(lower, upper, search.grid_points);
    auto objective = [&](double h) { return validation_log_likelihood(sample, validation, h); };
    const std::vector<double> values = evaluate_on_grid(grid, objective);

    BandwidthResult result{BandwidthMethod::lik, 0.0, 0.0, {}};
    for (std::size_t k = 0; k < grid.size(); ++k) result.trace.push_back({grid[k], values[k]});
    const auto k = static_cast<std::size_t>(std::distance(values.begin(), std::max_element(values.begin(), values.end())));
    if (k == 0 || k + 1 == grid.size()) {
        throw SearchBoundaryError("validation likelihood maximum lies on the search boundary", grid[k], lower, upper);
    }
    std::vector<TracePoint> refine_trace;
    const double refined = golden_section_minimize([&](double h) { return -objective(h); }, grid[k - 1], grid[k + 1],
                                                   search.rel_tol, &refine_trace);
    for (const auto& p : refine_trace) result.trace.push_back({p.iterate, -p.objective});
    const double refined_value = objective(refined);
    if (refined_value >= values[k]) {
        result.bandwidth = refined;
        result.objective = refined_value;
    } else {
        result.bandwidth = grid[k];
        result.objective = values[k];
    }
    result.trace.push_back({result.bandwidth, result.objective});
    return result;
}

double k_tau(std::span<const double> z, std::size_t tau) {
    for (double v : z) {
        if (!(v >= 0.0 && v <= 1.0)) throw InvalidInput("k_tau arguments must lie in [0, 1]");
    }
    if (z.empty() || tau >= z.size()) throw InvalidInput("k_tau needs at least one lag-tau pair");
    return tau == 0 ? k_tau_uniform(z) : k_tau_pairs(z, tau);
}

double pit_objective(const Sample& sample, const ValidationSet& validation, double h, const PitConfig& config) {
    const std::size_t m = validation.size();
    if (config.nu >= m) throw InvalidInput("PIT lag nu must be smaller than the validation size");
    const std::vector<double> pits = KernelDensity(sample, h).cdf(validation.values());
    double worst = 0.0;
    for (std::size_t tau = 0; tau <= config.nu; ++tau) {
        worst = std::max(worst, std::sqrt(static_cast<double>(m - tau)) * k_tau(pits, tau));
    }
    return worst;
}

BandwidthResult select_pit(const Sample& sample, const ValidationSet& validation, const PitConfig& config,
                           const SearchConfig& search) {
    if (config.nu >= validation.size()) throw InvalidInput("PIT lag nu must be smaller than the validation size");
    const auto [lower, upper] = validation_search_bounds(sample, search);
    const std::vector<double> grid = geometric_grid(lower, upper, search.grid_points);
    const std::vector<double> values =
        evaluate_on_grid(grid, [&](double h) { return pit_objective(sample, validation, h, config); });

    BandwidthResult result{BandwidthMethod::pit, 0.0, 0.0, {}};
    for (std::size_t k = 0; k < grid.size(); ++k) result.trace.push_back({grid[k], values[k]});
    const auto k = static_cast<std::size_t>(std::distance(values.begin(), std::min_element(values.begin(), values.end())));
    if (k == 0 || k + 1 == grid.size()) {
        throw SearchBoundaryError("PIT objective minimum lies on the search boundary", grid[k], lower, upper);
    }
    result.bandwidth = grid[k];
    result.objective = values[k];
    result.trace.push_back({result.bandwidth, result.objective});
    return result;
}

} // namespace kdeplex
