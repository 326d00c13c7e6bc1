#pragma once

// Reference implementations used only by the tests. Everything here is
// written from first principles and does not call into the library's
// evaluation paths, so agreement is evidence of correctness.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace kdeplex::oracle {

inline double phi(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }
inline double Phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Composite Simpson rule with `intervals` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t intervals) {
    if (intervals % 2 == 1) ++intervals;
    const double h = (b - a) / static_cast<double>(intervals);
    double sum = f(a) + f(b);
    for (std::size_t i = 1; i < intervals; ++i) sum += f(a + static_cast<double>(i) * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// Adaptive Simpson to absolute tolerance `tol`.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int depth = 50) {
    struct Step {
        static double rec(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                          double whole, double tol, int depth) {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m);
            const double rm = 0.5 * (m + b);
            const double flm = f(lm);
            const double frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
                   rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        }
    };
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    return Step::rec(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

// Straight sums of the kernel estimate and its derivatives.
inline double kde_pdf(std::span<const double> xs, double h, double x) {
    double s = 0.0;
    for (double xi : xs) s += phi((x - xi) / h);
    return s / (static_cast<double>(xs.size()) * h);
}

inline double kde_cdf(std::span<const double> xs, double h, double x) {
    double s = 0.0;
    for (double xi : xs) s += Phi((x - xi) / h);
    return s / static_cast<double>(xs.size());
}

inline double kde_second_derivative(std::span<const double> xs, double h, double x) {
    double s = 0.0;
    for (double xi : xs) {
        const double z = (x - xi) / h;
        s += (z * z - 1.0) * phi(z);
    }
    return s / (static_cast<double>(xs.size()) * h * h * h);
}

// sup |F_h - F_emp| over a uniform grid on [min - 5h, max + 5h], with the
// empirical cdf taken both at each probe and just to its left. When
// `probe_data` is set the observations themselves are added to the probes;
// a plain grid only resolves the supremum to about f_h * spacing.
inline double ks_grid_sup(std::span<const double> xs, double h, std::size_t points, bool probe_data = true) {
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front() - 5.0 * h;
    const double hi = sorted.back() + 5.0 * h;
    const double n = static_cast<double>(sorted.size());
    double worst = 0.0;
    auto probe = [&](double x) {
        const double f = kde_cdf(xs, h, x);
        const double at = static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin()) / n;
        const double below = static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin()) / n;
        worst = std::max({worst, std::fabs(f - at), std::fabs(f - below)});
    };
    for (std::size_t k = 0; k < points; ++k) probe(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1));
    if (probe_data) {
        for (double x : xs) probe(x);
    }
    return worst;
}

// Direct double loop over the k_tau definition.
inline double k_tau_brute(std::span<const double> z, std::size_t tau) {
    const std::size_t m = z.size();
    double worst = 0.0;
    if (tau == 0) {
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t count = 0;
            for (std::size_t j = 0; j < m; ++j) count += (z[j] >= 0.0 && z[j] <= z[i]) ? 1 : 0;
            worst = std::max(worst, std::fabs(z[i] - static_cast<double>(count) / static_cast<double>(m + 1)));
        }
        return worst;
    }
    for (std::size_t i = 0; i + tau < m; ++i) {
        std::size_t count = 0;
        for (std::size_t j = 0; j + tau < m; ++j) {
            count += (z[j] <= z[i] && z[j + tau] <= z[i + tau]) ? 1 : 0;
        }
        worst = std::max(worst, std::fabs(z[i] * z[i + tau] - static_cast<double>(count) / static_cast<double>(m - tau + 1)));
    }
    return worst;
}

// Market information from raw transition counts, zeros counted as half
// positive and half negative.
inline double counting_market_info(std::span<const double> r) {
    double c[2][2] = {{0, 0}, {0, 0}};
    auto weights = [](double x, double w[2]) {
        w[0] = x > 0 ? 1.0 : (x < 0 ? 0.0 : 0.5);
        w[1] = 1.0 - w[0];
    };
    for (std::size_t t = 0; t + 1 < r.size(); ++t) {
        double a[2];
        double b[2];
        weights(r[t], a);
        weights(r[t + 1], b);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) c[i][j] += a[i] * b[j];
    }
    const double pairs = static_cast<double>(r.size() - 1);
    double info = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double p = (c[i][0] + c[i][1]) / pairs;
        info += p;  // -p log2(p/2) = -p log2 p + p
        if (p > 0) info -= p * std::log2(p);
        for (int j = 0; j < 2; ++j) {
            const double q = c[i][j] / pairs;
            if (q > 0) info += q * std::log2(q);
        }
    }
    return info;
}

// Exact fractional Gaussian noise by the Durbin-Levinson recursion
// (Hosking's method); the cumulative sum is fractional Brownian motion.
inline std::vector<double> fbm_path(std::size_t length, double hurst, std::uint64_t seed) {
    const std::size_t n = length - 1;
    auto gamma = [hurst](double k) {
        const double e = 2.0 * hurst;
        return 0.5 * (std::pow(std::fabs(k + 1.0), e) - 2.0 * std::pow(std::fabs(k), e) + std::pow(std::fabs(k - 1.0), e));
    };
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> noise(n);
    std::vector<double> phi_coef;
    std::vector<double> prev;
    double v = 1.0;
    noise[0] = normal(rng);
    for (std::size_t t = 1; t < n; ++t) {
        // Update partial autocorrelation coefficients to order t.
        double num = gamma(static_cast<double>(t));
        for (std::size_t j = 0; j + 1 < t; ++j) num -= prev[j] * gamma(static_cast<double>(t - 1 - j));
        const double kappa = num / v;
        phi_coef.assign(t, 0.0);
        for (std::size_t j = 0; j + 1 < t; ++j) phi_coef[j] = prev[j] - kappa * prev[t - 2 - j];
        phi_coef[t - 1] = kappa;
        v *= (1.0 - kappa * kappa);
        double mean = 0.0;
        for (std::size_t j = 0; j < t; ++j) mean += phi_coef[j] * noise[t - 1 - j];
        noise[t] = mean + std::sqrt(v) * normal(rng);
        prev = phi_coef;
    }
    std::vector<double> path(length, 0.0);
    for (std::size_t t = 0; t < n; ++t) path[t + 1] = path[t] + noise[t];
    return path;
}

inline std::vector<double> gaussian_walk(std::size_t length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> path(length, 0.0);
    for (std::size_t t = 1; t < length; ++t) path[t] = path[t - 1] + normal(rng);
    return path;
}

inline std::vector<double> normal_draws(std::size_t n, std::uint64_t seed, double mean = 0.0, double sd = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(mean, sd);
    std::vector<double> out(n);
    for (auto& v : out) v = normal(rng);
    return out;
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size() / 2;
    return v.size() % 2 == 1 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

} // namespace kdeplex::oracle
