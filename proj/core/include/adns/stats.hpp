#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace adns {

// z quantile for the 99% two-sided Wilson interval.
inline constexpr double kWilsonZ99 = 2.5758293035489004;

// Half-width of the Wilson score interval for `successes` out of `n`.
inline double wilson_halfwidth(long successes, long n, double z = kWilsonZ99) {
    if (n <= 0) return 1.0;
    const double p = static_cast<double>(successes) / static_cast<double>(n);
    const double zz = z * z;
    const double denom = 1.0 + zz / n;
    return z * std::sqrt(p * (1.0 - p) / n + zz / (4.0 * static_cast<double>(n) * n)) / denom;
}

struct BatchStats {
    double mean = 0;
    double se = 0;  // batch-means standard error of the mean
    int n_batches = 0;
};

// Batch-means estimate for autocorrelated stationary samples.
inline BatchStats batch_means(const std::vector<double>& samples, int target_batches = 10) {
    BatchStats s;
    const std::size_t n = samples.size();
    if (n == 0) return s;
    double total = 0;
    for (double v : samples) total += v;
    s.mean = total / static_cast<double>(n);
    const int nb = static_cast<int>(std::min<std::size_t>(target_batches, n / 2));
    if (nb < 2) return s;  // se stays 0: too little data to resolve it
    const std::size_t len = n / nb;
    std::vector<double> means(nb, 0.0);
    for (int b = 0; b < nb; ++b) {
        double acc = 0;
        for (std::size_t i = 0; i < len; ++i) acc += samples[b * len + i];
        means[b] = acc / static_cast<double>(len);
    }
    double grand = 0;
    for (double m : means) grand += m;
    grand /= nb;
    double var = 0;
    for (double m : means) var += (m - grand) * (m - grand);
    var /= (nb - 1);
    s.se = std::sqrt(var / nb);
    s.n_batches = nb;
    return s;
}

}  // namespace adns
