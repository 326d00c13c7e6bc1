#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "kdeplex/bandwidth.hpp"
#include "kdeplex/kde.hpp"
#include "kdeplex/sample.hpp"
#include "kdeplex/search.hpp"

namespace kdeplex {

// AMISE-optimal bandwidth for a known curvature roughness R(f'') = int f''^2:
//   [ R(K) / (n mu2(K)^2 R(f'')) ]^(1/5)
double amise_bandwidth(std::size_t n, double curvature_roughness, const KernelSpec& kernel = KernelSpec::gaussian());

// Rule-of-thumb start value 1.06 sd n^(-1/5).
double silverman_bandwidth(double sd, std::size_t n);

struct FixedPointConfig {
    double tol = 1e-6;  // stop when |h_next - h| < tol * scale
    int max_iter = 200;
};

// Iterates h <- amise_bandwidth(n, curvature(h)) from h0 until the step is
// below config.tol * scale. Throws ConvergenceError (with the trace) when
// max_iter is exhausted or the iterate leaves (0, inf).
BandwidthResult solve_amise_fixed_point(const std::function<double(double)>& curvature, std::size_t n, double h0,
                                        double scale, const FixedPointConfig& config = {},
                                        const KernelSpec& kernel = KernelSpec::gaussian());

// Plug-in selector: the curvature at h is that of the KDE itself.
BandwidthResult select_amise_plugin(const Sample& sample, const FixedPointConfig& config = {});

// Sum of log f_h(v) over the validation set, densities floored at 1e-300.
double validation_log_likelihood(const Sample& sample, const ValidationSet& validation, double h);

// Likelihood selector. Grid defaults to 200 points on [1e-3 sd, 5 sd],
// followed by golden-section refinement. Throws SearchBoundaryError when the
// grid maximum is at an end of the range.
BandwidthResult select_likelihood(const Sample& sample, const ValidationSet& validation, const SearchConfig& search = {});

// Kolmogorov-Smirnov statistic of lag-tau pairs of PIT values against
// independent uniforms. tau = 0 compares the PITs with the uniform law:
//   max_i | z_i - #{j : z_j <= z_i} / (m + 1) |
// tau > 0 compares the pairs (z_i, z_{i+tau}), i = 1..m-tau:
//   max_i | z_i z_{i+tau} - #{j : z_j <= z_i, z_{j+tau} <= z_{i+tau}} / (m - tau + 1) |
// Runs in O(m log m).
double k_tau(std::span<const double> z, std::size_t tau);

struct PitConfig {
    std::size_t nu = 22;  // largest lag
};

// Objective of the PIT selector at h: max over tau <= nu of sqrt(m - tau) k_tau.
double pit_objective(const Sample& sample, const ValidationSet& validation, double h, const PitConfig& config = {});

// PIT selector; grid search only (the objective is piecewise constant in the
// PIT ranks). Same default grid as select_likelihood.
BandwidthResult select_pit(const Sample& sample, const ValidationSet& validation, const PitConfig& config = {},
                           const SearchConfig& search = {});

} // namespace kdeplex
