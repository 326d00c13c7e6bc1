#pragma once

#include <functional>
#include <span>

#include "kdeplex/kde.hpp"
#include "kdeplex/quadrature.hpp"
#include "kdeplex/sample.hpp"

namespace kdeplex {

// Maximum-likelihood Gaussian (standard deviation uses divisor n).
struct GaussianFit {
    double mean;
    double std;

    double cdf(double x) const;
};

// Throws DegenerateData for fewer than 2 values or zero variance.
GaussianFit fit_gaussian(std::span<const double> values);
GaussianFit fit_gaussian(const Sample& sample);

// Kolmogorov-Smirnov distance between the KDE cdf and the empirical cdf of
// the observations it was built from. The supremum is attained at a data
// point, approached from the left or the right:
//   max_j max(|F_h(X_j) - #{X_i <= X_j}/n|, |F_h(X_j) - #{X_i < X_j}/n|)
double ks_vs_empirical(const KernelDensity& kd);

// Default integration window for cumulative_kl: mean +/- 10 (std + h).
Interval default_kl_window(const GaussianFit& fit, double bandwidth);

// Cumulative Kullback-Leibler divergence
//   integral of F(x) log(F(x) / G(x)) dx
// over the quadrature window, with the integrand taken as 0 where F = 0 and
// G floored at 1e-300. No (G - F) correction term, so the value is not
// guaranteed nonnegative on a truncated window; it is returned as computed.
// Throws DegenerateData when the integrand is not finite.
double cumulative_kl(const KernelDensity& kd, const GaussianFit& fit, const QuadratureConfig& quad = {});

// Same integral for an arbitrary cdf; the window defaults to
// mean +/- 10 std of the fit.
double cumulative_kl(const std::function<double(double)>& cdf, const GaussianFit& fit,
                     const QuadratureConfig& quad = {});

// -integral of g log g over `support` (0 log 0 := 0).
double shannon_entropy(const KernelDensity& kd, Interval support, const QuadratureConfig& quad = {});
double shannon_entropy(const std::function<double(double)>& density, Interval support,
                       const QuadratureConfig& quad = {});

// Squared L2 distance from the uniform density on `support`.
double euclidean_divergence_from_uniform(const KernelDensity& kd, Interval support, const QuadratureConfig& quad = {});
double euclidean_divergence_from_uniform(const std::function<double(double)>& density, Interval support,
                                         const QuadratureConfig& quad = {});

// Lopez-Ruiz, Mancini and Calbet complexity: entropy times divergence from
// uniform on the same support. The support must be chosen by the caller;
// there is no canonical one for an unbounded density.
double lmc_complexity(const KernelDensity& kd, Interval support, const QuadratureConfig& quad = {});
double lmc_complexity(const std::function<double(double)>& density, Interval support,
                      const QuadratureConfig& quad = {});

} // namespace kdeplex
