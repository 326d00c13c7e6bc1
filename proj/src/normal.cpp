#include "kdeplex/normal.hpp"

#include <array>
#include <cmath>
#include <cstddef>

namespace kdeplex::detail {
namespace {

constexpr int kStepsPerUnit = 128;
constexpr std::size_t kIntervals = static_cast<std::size_t>(kCdfCutoff) * kStepsPerUnit;
constexpr double kStep = 1.0 / kStepsPerUnit;

// Lower-tail probability of the interval [a, b], computed without
// cancellation for a, b <= 0.
double interval_mass(double a, double b) {
    return 0.5 * (std::erfc(-b / std::numbers::sqrt2) - std::erfc(-a / std::numbers::sqrt2));
}

struct Table {
    // Polynomial coefficients in the local coordinate t = (z - a) / step.
    std::array<std::array<double, 6>, kIntervals> coeff{};

    Table() {
        for (std::size_t k = 0; k < kIntervals; ++k) {
            const double a = -kCdfCutoff + static_cast<double>(k) * kStep;
            const double b = a + kStep;
            const double f0 = normal_cdf(a);
            const double df = interval_mass(a, b);
            const double d0 = kStep * normal_pdf(a);
            const double d1 = kStep * normal_pdf(b);
            const double s0 = kStep * kStep * (-a * normal_pdf(a));
            const double s1 = kStep * kStep * (-b * normal_pdf(b));
            auto& c = coeff[k];
            c[0] = f0;
            c[1] = d0;
            c[2] = 0.5 * s0;
            c[3] = 10.0 * df - 6.0 * d0 - 4.0 * d1 - 1.5 * s0 + 0.5 * s1;
            c[4] = -15.0 * df + 8.0 * d0 + 7.0 * d1 + 1.5 * s0 - s1;
            c[5] = 6.0 * df - 3.0 * d0 - 3.0 * d1 - 0.5 * s0 + 0.5 * s1;
        }
    }
};

const Table& table() {
    static const Table t;
    return t;
}

// Phi(z) for z in [-cutoff, 0].
double lower_half(double z) noexcept {
    const double u = (z + kCdfCutoff) * kStepsPerUnit;
    auto k = static_cast<std::size_t>(u);
    if (k >= kIntervals) k = kIntervals - 1;
    const double t = u - static_cast<double>(k);
    const auto& c = table().coeff[k];
    return c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * (c[4] + t * c[5]))));
}

} // namespace

double fast_normal_cdf(double z) noexcept {
    if (z <= -kCdfCutoff) return 0.0;
    if (z >= kCdfCutoff) return 1.0;
    if (z <= 0.0) return std::fmax(lower_half(z), 0.0);
    return 1.0 - std::fmax(lower_half(-z), 0.0);
}

} // namespace kdeplex::detail
