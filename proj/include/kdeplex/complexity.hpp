#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kdeplex/bandwidth.hpp"
#include "kdeplex/divergence.hpp"
#include "kdeplex/quadrature.hpp"
#include "kdeplex/sample.hpp"
#include "kdeplex/search.hpp"

namespace kdeplex {

// The two divergences a complexity value is built from.
struct DivergencePair {
    double e;  // Kolmogorov-Smirnov distance to the empirical cdf
    double p;  // cumulative KL divergence to the ML Gaussian
};

struct ComplexityScaling {
    double e_max;
    double p_max;
};

struct ComplexityConfig {
    // Search for the bandwidth closest to the Gaussian fit. Unset bounds
    // default to [1e-3 sd, 2 (max - min)].
    SearchConfig border_search{};
    // Curve grid on (h_min, h_p]; h_min defaults to 1e-3 sd.
    std::size_t curve_points = 500;
    std::optional<double> h_min;
    // Extra points on (h_p, extension_factor * h_p], flagged beyond_hp.
    std::size_t extension_points = 0;
    double extension_factor = 2.0;
    // Relative tolerance of the local refinement of the maximum.
    double refine_rel_tol = 1e-3;
    QuadratureConfig quad{};
};

void validate(const ComplexityConfig& config);

// Bandwidth-indexed divergences and scaled complexity. Points past h_p are
// for display only and never take part in e_max, p_max or h_c.
struct ComplexityCurve {
    std::vector<double> grid;
    std::vector<double> e_values;
    std::vector<double> p_values;
    std::vector<double> c_values;
    std::vector<bool> beyond_hp;
    double h_p = 0.0;
    double h_c = 0.0;  // grid argmax of c_values over grid <= h_p
    double e_max = 0.0;
    double p_max = 0.0;

    ComplexityScaling scaling() const { return {e_max, p_max}; }
};

// Prepared divergence evaluator for one sample. Thread-safe.
class ComplexityEvaluator {
public:
    explicit ComplexityEvaluator(const Sample& sample, QuadratureConfig quad = {});

    const GaussianFit& fit() const noexcept { return fit_; }
    const Sample& sample() const noexcept { return sample_; }

    double e(double h) const;
    double p(double h) const;
    DivergencePair both(double h) const;

private:
    Sample sample_;
    GaussianFit fit_;
    QuadratureConfig quad_;
};

// Minimiser of P_h: coarse geometric grid, then golden-section refinement
// between the neighbours of the best grid point. Throws SearchBoundaryError
// when the best grid point is an end of the range.
double find_h_p(const Sample& sample, const SearchConfig& search = {}, const QuadratureConfig& quad = {});

// min(E_h / e_max, P_h / p_max)
double complexity_at(const Sample& sample, double h, ComplexityScaling scaling, const QuadratureConfig& quad = {});
double complexity_from(DivergencePair d, ComplexityScaling scaling);

ComplexityCurve build_complexity_curve(const Sample& sample, const ComplexityConfig& config = {});

// Bandwidth of maximum complexity on (0, h_p]: grid argmax of the curve,
// refined by ternary search between its neighbours (clipped at h_p).
BandwidthResult select_h_c(const Sample& sample, const ComplexityConfig& config = {});
BandwidthResult select_h_c(const Sample& sample, const ComplexityCurve& curve, const ComplexityConfig& config = {});

} // namespace kdeplex
