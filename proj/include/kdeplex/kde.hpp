#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kdeplex/sample.hpp"

namespace kdeplex {

enum class KernelKind { gaussian };

struct KernelSpec {
    KernelKind kind = KernelKind::gaussian;
    double roughness = 0.28209479177387814347;  // integral of K^2 = 1 / (2 sqrt(pi))
    double second_moment = 1.0;                 // integral of x^2 K(x)

    static KernelSpec gaussian() { return {}; }
};

// Gaussian kernel density estimate with a fixed bandwidth.
//
// Holds a sorted copy of the observations; every statistic computed from it
// is therefore independent of the input order. Unlike Sample, a single
// observation is accepted: that is a plain Gaussian bump.
class KernelDensity {
public:
    KernelDensity(std::span<const double> observations, double bandwidth,
                  KernelSpec kernel = KernelSpec::gaussian());
    KernelDensity(const Sample& sample, double bandwidth, KernelSpec kernel = KernelSpec::gaussian())
        : KernelDensity(sample.values(), bandwidth, kernel) {}

    double bandwidth() const noexcept { return bandwidth_; }
    const KernelSpec& kernel() const noexcept { return kernel_; }
    std::size_t size() const noexcept { return sorted_.size(); }
    std::span<const double> sorted_values() const noexcept { return sorted_; }

    // (1/(n h)) sum K((x - X_i) / h)
    double pdf(double x) const;
    // (1/n) sum Phi((x - X_i) / h)
    double cdf(double x) const;

    // Batched evaluation. Arguments in any order; results follow the input
    // order. Only observations within the kernel's numerical support are
    // visited, so this is much faster than repeated pointwise calls.
    std::vector<double> pdf(std::span<const double> xs) const;
    std::vector<double> cdf(std::span<const double> xs) const;

    // Integral of the squared second derivative of the estimate, from the
    // exact pairwise identity
    //   (1 / (n^2 h^5)) sum_ij phi2''''((X_i - X_j) / h)
    // where phi2 is the N(0, 2) density.
    double curvature_roughness() const;

private:
    std::vector<double> sorted_;
    double bandwidth_;
    KernelSpec kernel_;
};

} // namespace kdeplex
