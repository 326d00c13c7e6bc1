#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace kdeplex {

struct Interval {
    double lower;
    double upper;

    double width() const noexcept { return upper - lower; }
};

// Composite trapezoid rule on a uniform grid. When `window` is unset each
// caller picks a default adapted to its integrand.
struct QuadratureConfig {
    std::size_t points = 4001;
    std::optional<Interval> window;
};

// `points` equally spaced nodes from lower to upper inclusive.
std::vector<double> uniform_grid(Interval interval, std::size_t points);

// Trapezoid sum of equally spaced samples.
double trapezoid(std::span<const double> values, double spacing);

void validate(const QuadratureConfig& config);

} // namespace kdeplex
