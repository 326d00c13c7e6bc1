#include "kdeplex/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kdeplex/errors.hpp"
#include "kdeplex/normal.hpp"

namespace kdeplex {
namespace {

constexpr double kCdfFloor = 1e-300;

double kl_from_values(std::span<const double> xs, std::span<const double> f, const GaussianFit& fit) {
    std::vector<double> integrand(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double fk = f[k];
        if (fk <= 0.0) {
            integrand[k] = 0.0;
            continue;
        }
        const double gk = std::max(fit.cdf(xs[k]), kCdfFloor);
        integrand[k] = fk * std::log(fk / gk);
        if (!std::isfinite(integrand[k])) throw DegenerateData("cumulative KL integrand is not finite");
    }
    return trapezoid(integrand, xs[1] - xs[0]);
}

std::vector<double> support_grid(Interval support, const QuadratureConfig& quad) {
    validate(quad);
    if (!std::isfinite(support.lower) || !std::isfinite(support.upper) || !(support.upper > support.lower))
        throw InvalidInput("support must be a finite nonempty interval");
    return uniform_grid(support, quad.points);
}

double entropy_from_values(std::span<const double> g, double dx) {
    std::vector<double> integrand(g.size());
    std::transform(g.begin(), g.end(), integrand.begin(), [](double v) { return v > 0.0 ? -v * std::log(v) : 0.0; });
    return trapezoid(integrand, dx);
}

double divergence_from_values(std::span<const double> g, Interval support, double dx) {
    const double u = 1.0 / support.width();
    std::vector<double> integrand(g.size());
    std::transform(g.begin(), g.end(), integrand.begin(), [u](double v) { return (v - u) * (v - u); });
    return trapezoid(integrand, dx);
}

std::vector<double> sample_density(const std::function<double(double)>& density, std::span<const double> xs) {
    std::vector<double> g(xs.size());
    std::transform(xs.begin(), xs.end(), g.begin(), density);
    return g;
}

} // namespace

double GaussianFit::cdf(double x) const { return normal_cdf((x - mean) / std); }

GaussianFit fit_gaussian(std::span<const double> values) {
    if (values.size() < 2) throw DegenerateData("Gaussian fit needs at least 2 values");
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / n);
    if (!(sd > 0.0) || !std::isfinite(sd)) throw DegenerateData("Gaussian fit is degenerate: zero variance");
    return {mean, sd};
}

GaussianFit fit_gaussian(const Sample& sample) { return {sample.mean(), sample.ml_std()}; }

double ks_vs_empirical(const KernelDensity& kd) {
    const auto xs = kd.sorted_values();
    const std::vector<double> f = kd.cdf(xs);
    const double n = static_cast<double>(xs.size());
    double worst = 0.0;
    std::size_t i = 0;
    while (i < xs.size()) {
        // [i, j) is a run of tied values.
        std::size_t j = i + 1;
        while (j < xs.size() && xs[j] == xs[i]) ++j;
        const double below = static_cast<double>(i) / n;
        const double at_or_below = static_cast<double>(j) / n;
        for (std::size_t k = i; k < j; ++k) {
            worst = std::max({worst, std::fabs(f[k] - at_or_below), std::fabs(f[k] - below)});
        }
        i = j;
    }
    return worst;
}

Interval default_kl_window(const GaussianFit& fit, double bandwidth) {
    const double reach = 10.0 * (fit.std + bandwidth);
    return {fit.mean - reach, fit.mean + reach};
}

double cumulative_kl(const KernelDensity& kd, const GaussianFit& fit, const QuadratureConfig& quad) {
    validate(quad);
    const Interval window = quad.window.value_or(default_kl_window(fit, kd.bandwidth()));
    const std::vector<double> xs = uniform_grid(window, quad.points);
    return kl_from_values(xs, kd.cdf(xs), fit);
}

double cumulative_kl(const std::function<double(double)>& cdf, const GaussianFit& fit, const QuadratureConfig& quad) {
    validate(quad);
    const Interval window = quad.window.value_or(Interval{fit.mean - 10.0 * fit.std, fit.mean + 10.0 * fit.std});
    const std::vector<double> xs = uniform_grid(window, quad.points);
    return kl_from_values(xs, sample_density(cdf, xs), fit);
}

double shannon_entropy(const KernelDensity& kd, Interval support, const QuadratureConfig& quad) {
    const auto xs = support_grid(support, quad);
    return entropy_from_values(kd.pdf(xs), xs[1] - xs[0]);
}

double shannon_entropy(const std::function<double(double)>& density, Interval support, const QuadratureConfig& quad) {
    const auto xs = support_grid(support, quad);
    return entropy_from_values(sample_density(density, xs), xs[1] - xs[0]);
}

double euclidean_divergence_from_uniform(const KernelDensity& kd, Interval support, const QuadratureConfig& quad) {
    const auto xs = support_grid(support, quad);
    return divergence_from_values(kd.pdf(xs), support, xs[1] - xs[0]);
}

double euclidean_divergence_from_uniform(const std::function<double(double)>& density, Interval support,
                                         const QuadratureConfig& quad) {
    const auto xs = support_grid(support, quad);
    return divergence_from_values(sample_density(density, xs), support, xs[1] - xs[0]);
}

double lmc_complexity(const KernelDensity& kd, Interval support, const QuadratureConfig& quad) {
    const auto xs = support_grid(support, quad);
    const std::vector<double> g = kd.pdf(xs);
    const double dx = xs[1] - xs[0];
    return entropy_from_values(g, dx) * divergence_from_values(g, support, dx);
}

double lmc_complexity(const std::function<double(double)>& density, Interval support, const QuadratureConfig& quad) {
    const auto xs = support_grid(support, quad);
    const std::vector<double> g = sample_density(density, xs);
    const double dx = xs[1] - xs[0];
    return entropy_from_values(g, dx) * divergence_from_values(g, support, dx);
}

} // namespace kdeplex
