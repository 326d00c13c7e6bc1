#include "kdeplex/quadrature.hpp"

#include <cmath>

#include "kdeplex/errors.hpp"

namespace kdeplex {

std::vector<double> uniform_grid(Interval interval, std::size_t points) {
    if (points < 2) throw InvalidInput("grid needs at least 2 points");
    if (!(interval.upper > interval.lower)) throw InvalidInput("grid interval is empty");
    std::vector<double> grid(points);
    const double step = interval.width() / static_cast<double>(points - 1);
    for (std::size_t k = 0; k < points; ++k) grid[k] = interval.lower + static_cast<double>(k) * step;
    grid.back() = interval.upper;
    return grid;
}

double trapezoid(std::span<const double> values, double spacing) {
    if (values.size() < 2) return 0.0;
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t k = 1; k + 1 < values.size(); ++k) sum += values[k];
    return sum * spacing;
}

void validate(const QuadratureConfig& config) {
    if (config.points < 3) throw InvalidInput("quadrature needs at least 3 points");
    if (config.window) {
        const auto& w = *config.window;
        if (!std::isfinite(w.lower) || !std::isfinite(w.upper) || !(w.upper > w.lower))
            throw InvalidInput("quadrature window must be a finite nonempty interval");
    }
}

} // namespace kdeplex
