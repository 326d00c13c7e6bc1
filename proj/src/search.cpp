#include "kdeplex/search.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

namespace kdeplex {
namespace {

constexpr double kInvPhi = 0.6180339887498948482;

bool narrow_enough(double a, double b, double rel_tol) {
    return (b - a) <= rel_tol * 0.5 * (std::fabs(a) + std::fabs(b));
}

} // namespace

void validate(const SearchConfig& config) {
    if (config.grid_points < 3) throw InvalidInput("search grid needs at least 3 points");
    if (!(config.rel_tol > 0.0)) throw InvalidInput("search tolerance must be positive");
    if (config.lower && !(*config.lower > 0.0)) throw InvalidInput("search lower bound must be positive");
    if (config.lower && config.upper && !(*config.upper > *config.lower))
        throw InvalidInput("search upper bound must exceed the lower bound");
}

std::vector<double> geometric_grid(double lower, double upper, std::size_t points) {
    if (points < 2) throw InvalidInput("grid needs at least 2 points");
    if (!(lower > 0.0) || !(upper > lower) || !std::isfinite(upper))
        throw InvalidInput("geometric grid needs 0 < lower < upper");
    std::vector<double> grid(points);
    const double log_lo = std::log(lower);
    const double step = (std::log(upper) - log_lo) / static_cast<double>(points - 1);
    for (std::size_t k = 0; k < points; ++k) grid[k] = std::exp(log_lo + static_cast<double>(k) * step);
    grid.front() = lower;
    grid.back() = upper;
    return grid;
}

double golden_section_minimize(const std::function<double(double)>& f, double a, double b, double rel_tol,
                               std::vector<TracePoint>* trace) {
    auto eval = [&](double x) {
        const double y = f(x);
        if (trace) trace->push_back({x, y});
        return y;
    };
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = eval(c);
    double fd = eval(d);
    for (int iter = 0; iter < 200 && !narrow_enough(a, b, rel_tol); ++iter) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = eval(d);
        }
    }
    return fc <= fd ? c : d;
}

double ternary_search_maximize(const std::function<double(double)>& f, double a, double b, double rel_tol,
                               std::vector<TracePoint>* trace) {
    auto eval = [&](double x) {
        const double y = f(x);
        if (trace) trace->push_back({x, y});
        return y;
    };
    for (int iter = 0; iter < 200 && !narrow_enough(a, b, rel_tol); ++iter) {
        const double m1 = a + (b - a) / 3.0;
        const double m2 = b - (b - a) / 3.0;
        if (eval(m1) < eval(m2)) {
            a = m1;
        } else {
            b = m2;
        }
    }
    return 0.5 * (a + b);
}

std::vector<double> evaluate_on_grid(const std::vector<double>& grid, const std::function<double(double)>& f) {
    std::vector<double> out(grid.size());
    const std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), grid.size());
    if (workers <= 1) {
        for (std::size_t k = 0; k < grid.size(); ++k) out[k] = f(grid[k]);
        return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t k = w; k < grid.size(); k += workers) out[k] = f(grid[k]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    pool.clear();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

} // namespace kdeplex
