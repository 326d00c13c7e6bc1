#pragma once

#include <cmath>
#include <numbers>

namespace kdeplex {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684758586311649;

inline double normal_pdf(double z) noexcept { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

inline double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z * std::numbers::sqrt2 / 2.0); }

namespace detail {

// Tabulated standard normal cdf for bulk kernel sums. Quintic Hermite
// interpolation on [-9, 0] with step 1/128 (absolute error below 1e-16),
// reflected for positive arguments. Returns exactly 0 below -9 and exactly 1
// above 9, which matches normal_cdf rounding on the right tail.
double fast_normal_cdf(double z) noexcept;

// Beyond this many bandwidths a Gaussian kernel cdf term is 0 or 1.
inline constexpr double kCdfCutoff = 9.0;

} // namespace detail
} // namespace kdeplex
