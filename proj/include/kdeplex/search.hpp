#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "kdeplex/errors.hpp"

namespace kdeplex {

// Bandwidth search range and resolution. Bounds left unset are chosen by
// each selector relative to the sample scale.
struct SearchConfig {
    std::size_t grid_points = 200;
    std::optional<double> lower;
    std::optional<double> upper;
    double rel_tol = 1e-4;
};

void validate(const SearchConfig& config);

// `points` geometrically spaced values from lower to upper inclusive.
std::vector<double> geometric_grid(double lower, double upper, std::size_t points);

// Golden-section minimisation of a unimodal function on [a, b]; stops when
// the bracket is narrower than rel_tol times its midpoint. Every evaluation
// is appended to `trace` when given.
double golden_section_minimize(const std::function<double(double)>& f, double a, double b, double rel_tol,
                               std::vector<TracePoint>* trace = nullptr);

// Ternary search for the maximum of a unimodal function on [a, b].
double ternary_search_maximize(const std::function<double(double)>& f, double a, double b, double rel_tol,
                               std::vector<TracePoint>* trace = nullptr);

// Evaluates f at every grid point. Evaluations may run concurrently; the
// result only depends on the grid.
std::vector<double> evaluate_on_grid(const std::vector<double>& grid, const std::function<double(double)>& f);

} // namespace kdeplex
