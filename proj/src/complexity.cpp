#include "kdeplex/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "kdeplex/errors.hpp"
#include "kdeplex/kde.hpp"

namespace kdeplex {

void validate(const ComplexityConfig& config) {
    validate(config.border_search);
    validate(config.quad);
    if (config.curve_points < 3) throw InvalidInput("complexity curve needs at least 3 points");
    if (config.h_min && !(*config.h_min > 0.0)) throw InvalidInput("h_min must be positive");
    if (config.extension_points > 0 && !(config.extension_factor > 1.0))
        throw InvalidInput("curve extension factor must exceed 1");
    if (!(config.refine_rel_tol > 0.0)) throw InvalidInput("refinement tolerance must be positive");
}

ComplexityEvaluator::ComplexityEvaluator(const Sample& sample, QuadratureConfig quad)
    : sample_(sample), fit_(fit_gaussian(sample)), quad_(std::move(quad)) {
    validate(quad_);
}

double ComplexityEvaluator::e(double h) const { return ks_vs_empirical(KernelDensity(sample_, h)); }

double ComplexityEvaluator::p(double h) const { return cumulative_kl(KernelDensity(sample_, h), fit_, quad_); }

DivergencePair ComplexityEvaluator::both(double h) const {
    const KernelDensity kd(sample_, h);
    return {ks_vs_empirical(kd), cumulative_kl(kd, fit_, quad_)};
}

double find_h_p(const Sample& sample, const SearchConfig& search, const QuadratureConfig& quad) {
    validate(search);
    const ComplexityEvaluator eval(sample, quad);
    const double lower = search.lower.value_or(1e-3 * sample.ml_std());
    const double upper = search.upper.value_or(2.0 * sample.range());
    const std::vector<double> grid = geometric_grid(lower, upper, search.grid_points);
    const std::vector<double> p = evaluate_on_grid(grid, [&](double h) { return eval.p(h); });

    const auto k = static_cast<std::size_t>(std::distance(p.begin(), std::min_element(p.begin(), p.end())));
    if (k == 0 || k + 1 == grid.size()) {
        throw SearchBoundaryError("cumulative KL minimum lies on the search boundary; widen the bandwidth range",
                                  grid[k], lower, upper);
    }
    const double refined =
        golden_section_minimize([&](double h) { return eval.p(h); }, grid[k - 1], grid[k + 1], search.rel_tol);
    return eval.p(refined) <= p[k] ? refined : grid[k];
}

double complexity_from(DivergencePair d, ComplexityScaling scaling) {
    return std::min(d.e / scaling.e_max, d.p / scaling.p_max);
}

double complexity_at(const Sample& sample, double h, ComplexityScaling scaling, const QuadratureConfig& quad) {
    if (!(scaling.e_max > 0.0) || !(scaling.p_max > 0.0)) throw InvalidInput("complexity scaling must be positive");
    return complexity_from(ComplexityEvaluator(sample, quad).both(h), scaling);
}

ComplexityCurve build_complexity_curve(const Sample& sample, const ComplexityConfig& config) {
    validate(config);
    const ComplexityEvaluator eval(sample, config.quad);

    ComplexityCurve curve;
    curve.h_p = find_h_p(sample, config.border_search, config.quad);
    const double h_min = config.h_min.value_or(1e-3 * sample.ml_std());
    if (!(h_min < curve.h_p)) throw InvalidInput("h_min must lie below h_p");

    curve.grid = geometric_grid(h_min, curve.h_p, config.curve_points);
    const std::size_t accepted = curve.grid.size();
    if (config.extension_points > 0) {
        const auto ext = geometric_grid(curve.h_p, config.extension_factor * curve.h_p, config.extension_points + 1);
        curve.grid.insert(curve.grid.end(), ext.begin() + 1, ext.end());
    }

    curve.e_values = evaluate_on_grid(curve.grid, [&](double h) { return eval.e(h); });
    curve.p_values = evaluate_on_grid(curve.grid, [&](double h) { return eval.p(h); });
    curve.e_max = *std::max_element(curve.e_values.begin(), curve.e_values.begin() + accepted);
    curve.p_max = *std::max_element(curve.p_values.begin(), curve.p_values.begin() + accepted);
    if (!(curve.e_max > 0.0) || !(curve.p_max > 0.0))
        throw DegenerateData("divergence maxima on (0, h_p] are not positive");

    curve.c_values.resize(curve.grid.size());
    curve.beyond_hp.resize(curve.grid.size());
    for (std::size_t k = 0; k < curve.grid.size(); ++k) {
        curve.c_values[k] = complexity_from({curve.e_values[k], curve.p_values[k]}, curve.scaling());
        curve.beyond_hp[k] = k >= accepted;
    }
    const auto best = std::max_element(curve.c_values.begin(), curve.c_values.begin() + accepted);
    curve.h_c = curve.grid[static_cast<std::size_t>(std::distance(curve.c_values.begin(), best))];
    return curve;
}

BandwidthResult select_h_c(const Sample& sample, const ComplexityConfig& config) {
    return select_h_c(sample, build_complexity_curve(sample, config), config);
}

BandwidthResult select_h_c(const Sample& sample, const ComplexityCurve& curve, const ComplexityConfig& config) {
    validate(config);
    const ComplexityEvaluator eval(sample, config.quad);
    const ComplexityScaling scaling = curve.scaling();

    std::size_t last = 0;
    while (last + 1 < curve.grid.size() && !curve.beyond_hp[last + 1]) ++last;
    std::size_t k = 0;
    for (std::size_t i = 1; i <= last; ++i) {
        if (curve.c_values[i] > curve.c_values[k]) k = i;
    }

    BandwidthResult result{BandwidthMethod::complexity, curve.grid[k], curve.c_values[k], {}};
    for (std::size_t i = 0; i <= last; ++i) result.trace.push_back({curve.grid[i], curve.c_values[i]});

    const double a = curve.grid[k == 0 ? 0 : k - 1];
    const double b = std::min(curve.grid[std::min(k + 1, last)], curve.h_p);
    if (b > a) {
        auto c_of = [&](double h) { return complexity_from(eval.both(h), scaling); };
        const double refined = ternary_search_maximize(c_of, a, b, config.refine_rel_tol, &result.trace);
        const double c_refined = c_of(refined);
        if (c_refined > result.objective) {
            result.bandwidth = std::min(refined, curve.h_p);
            result.objective = c_refined;
        }
    }
    result.trace.push_back({result.bandwidth, result.objective});
    return result;
}

} // namespace kdeplex
