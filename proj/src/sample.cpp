#include "kdeplex/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kdeplex/errors.hpp"

namespace kdeplex {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw InvalidInput("sample needs at least 2 observations");
    for (double v : values_) {
        if (!std::isfinite(v)) throw InvalidInput("sample contains a non-finite value");
    }
    const double n = static_cast<double>(values_.size());
    mean_ = std::accumulate(values_.begin(), values_.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values_) ss += (v - mean_) * (v - mean_);
    ml_std_ = std::sqrt(ss / n);
    if (!(ml_std_ > 0.0)) throw InvalidInput("sample has zero variance");
    const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
    min_ = *lo;
    max_ = *hi;
}

ValidationSet::ValidationSet(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw InvalidInput("validation set needs at least 2 observations");
    for (double v : values_) {
        if (!std::isfinite(v)) throw InvalidInput("validation set contains a non-finite value");
    }
}

} // namespace kdeplex
