#include "kdeplex/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kdeplex/errors.hpp"
#include "kdeplex/normal.hpp"

namespace kdeplex {
namespace {

// exp(-z^2/2) underflows to zero past this many bandwidths.
constexpr double kPdfCutoff = 39.0;
// phi2''''(d) ~ d^4 exp(-d^2/4) underflows past this distance.
constexpr double kCurvatureCutoff = 56.0;

bool is_ascending(std::span<const double> xs) {
    return std::is_sorted(xs.begin(), xs.end());
}

// Runs `eval_sorted` on an ascending copy of xs and scatters the results
// back to the caller's order.
template <class EvalSorted>
std::vector<double> in_input_order(std::span<const double> xs, EvalSorted eval_sorted) {
    if (is_ascending(xs)) return eval_sorted(xs);
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> sorted(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = xs[order[i]];
    const std::vector<double> values = eval_sorted(sorted);
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) out[order[i]] = values[i];
    return out;
}

} // namespace

KernelDensity::KernelDensity(std::span<const double> observations, double bandwidth, KernelSpec kernel)
    : sorted_(observations.begin(), observations.end()), bandwidth_(bandwidth), kernel_(kernel) {
    if (sorted_.empty()) throw InvalidInput("kernel density needs at least one observation");
    for (double v : sorted_) {
        if (!std::isfinite(v)) throw InvalidInput("kernel density observation is not finite");
    }
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) throw InvalidInput("bandwidth must be positive and finite");
    if (kernel_.kind != KernelKind::gaussian) throw InvalidInput("only the Gaussian kernel is supported");
    if (!(kernel_.roughness > 0.0) || !(kernel_.second_moment > 0.0))
        throw InvalidInput("kernel constants must be positive");
    std::sort(sorted_.begin(), sorted_.end());
}

double KernelDensity::pdf(double x) const {
    double sum = 0.0;
    for (double xi : sorted_) sum += normal_pdf((x - xi) / bandwidth_);
    return sum / (static_cast<double>(sorted_.size()) * bandwidth_);
}

double KernelDensity::cdf(double x) const {
    double sum = 0.0;
    for (double xi : sorted_) sum += normal_cdf((x - xi) / bandwidth_);
    return sum / static_cast<double>(sorted_.size());
}

std::vector<double> KernelDensity::pdf(std::span<const double> xs) const {
    return in_input_order(xs, [this](std::span<const double> sx) {
        const double h = bandwidth_;
        const double reach = kPdfCutoff * h;
        const double scale = 1.0 / (static_cast<double>(sorted_.size()) * h);
        std::vector<double> out(sx.size());
        auto lo = sorted_.begin();
        auto hi = sorted_.begin();
        for (std::size_t k = 0; k < sx.size(); ++k) {
            const double x = sx[k];
            while (lo != sorted_.end() && *lo <= x - reach) ++lo;
            if (hi < lo) hi = lo;
            while (hi != sorted_.end() && *hi < x + reach) ++hi;
            double sum = 0.0;
            for (auto it = lo; it != hi; ++it) {
                const double z = (x - *it) / h;
                sum += std::exp(-0.5 * z * z);
            }
            out[k] = kInvSqrt2Pi * sum * scale;
        }
        return out;
    });
}

std::vector<double> KernelDensity::cdf(std::span<const double> xs) const {
    return in_input_order(xs, [this](std::span<const double> sx) {
        const double h = bandwidth_;
        const double reach = detail::kCdfCutoff * h;
        const double inv_n = 1.0 / static_cast<double>(sorted_.size());
        std::vector<double> out(sx.size());
        // Observations in [begin, lo) lie at least `reach` below x and
        // contribute exactly 1; those at or beyond hi contribute 0.
        auto lo = sorted_.begin();
        auto hi = sorted_.begin();
        for (std::size_t k = 0; k < sx.size(); ++k) {
            const double x = sx[k];
            while (lo != sorted_.end() && *lo <= x - reach) ++lo;
            if (hi < lo) hi = lo;
            while (hi != sorted_.end() && *hi < x + reach) ++hi;
            double sum = 0.0;
            for (auto it = lo; it != hi; ++it) sum += detail::fast_normal_cdf((x - *it) / h);
            sum += static_cast<double>(lo - sorted_.begin());
            out[k] = std::clamp(sum * inv_n, 0.0, 1.0);
        }
        return out;
    });
}

double KernelDensity::curvature_roughness() const {
    const double h = bandwidth_;
    const std::size_t n = sorted_.size();
    // phi2''''(d) = (d^4 - 12 d^2 + 12) / 16 * exp(-d^2 / 4) / (2 sqrt(pi))
    auto psi = [](double d) {
        const double d2 = d * d;
        return (d2 * d2 - 12.0 * d2 + 12.0) / 16.0 * std::exp(-0.25 * d2);
    };
    // Diagonal terms, then each off-diagonal pair twice.
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = (sorted_[j] - sorted_[i]) / h;
            if (d > kCurvatureCutoff) break;
            off += psi(d);
        }
    }
    const double sum = static_cast<double>(n) * psi(0.0) + 2.0 * off;
    const double norm = 0.5 / std::sqrt(std::numbers::pi);
    const double nd = static_cast<double>(n);
    return norm * sum / (nd * nd * std::pow(h, 5));
}

} // namespace kdeplex
