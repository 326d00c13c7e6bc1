#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kdeplex {

// Ordered list of observations. Order is kept because lagged statistics
// (PIT pairs, sign transitions) depend on it.
//
// Invariants: n >= 2, every value finite, standard deviation > 0.
class Sample {
public:
    explicit Sample(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    double mean() const noexcept { return mean_; }
    // Maximum-likelihood standard deviation (divisor n).
    double ml_std() const noexcept { return ml_std_; }
    double min() const noexcept { return min_; }
    double max() const noexcept { return max_; }
    double range() const noexcept { return max_ - min_; }

private:
    std::vector<double> values_;
    double mean_ = 0.0;
    double ml_std_ = 0.0;
    double min_ = 0.0;
    double max_ = 0.0;
};

// Held-out observations used by the likelihood and PIT selectors.
class ValidationSet {
public:
    explicit ValidationSet(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    std::vector<double> values_;
};

} // namespace kdeplex
