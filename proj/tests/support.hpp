#pragma once

// Test-only oracles, independent of the library's evaluation paths.

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

// Plain midpoint-rule value of int_a^b y^k e^{y z - y^2 t/2} dy. Slow and
// direct on purpose; keep z, t moderate so the summation stays in range.
inline double riemann_segment_moment(double a, double b, double z, double t, int k,
                                     long panels = 1000000) {
    const double h = (b - a) / static_cast<double>(panels);
    double sum = 0.0;
    for (long i = 0; i < panels; ++i) {
        const double y = a + (static_cast<double>(i) + 0.5) * h;
        sum += std::pow(y, k) * std::exp(y * z - 0.5 * y * y * t);
    }
    return sum * h;
}

// Stabilized form of the printed two-Dirac inverse: for mu = delta_{1/(1-th)} +
// delta_{2/(1-th)},  h^{-1}(x,t) = t/(1-th) + (1-th) ln((sqrt(e^{ct}+4x) -
// sqrt(e^{ct}))/2), c = 1/(1-th)^2, rewritten so e^{ct} never materializes.
inline double two_dirac_h_inv(double x, double t, double theta = 0.5) {
    const double c = 1.0 / ((1.0 - theta) * (1.0 - theta));
    const double u = 4.0 * x * std::exp(-c * t);
    return t / (1.0 - theta) +
           (1.0 - theta) * (std::log(2.0 * x) - 0.5 * c * t - std::log1p(std::sqrt(1.0 + u)));
}

// Same rewrite of the printed closed-form risk tolerance:
// r = x/(1-g) * sqrt(4x+e^{ct}) / (sqrt(e^{ct}+4x) + sqrt(e^{ct})).
inline double two_dirac_r(double x, double t, double theta = 0.5) {
    const double gamma = 0.5 * (1.0 + theta); // 1/(1-gamma) = 2/(1-theta)
    const double c = 1.0 / ((1.0 - theta) * (1.0 - theta));
    const double u = 4.0 * x * std::exp(-c * t);
    return x / (1.0 - gamma) / (1.0 + 1.0 / std::sqrt(1.0 + u));
}

// Bisection solve of w e^w = target on the principal branch.
inline double lambert_w_bisect(double target) {
    double lo = -1.0, hi = 2.0;
    auto f = [&](double w) { return w * std::exp(w) - target; };
    while (f(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Kolmogorov-Smirnov distance between a sample and a CDF callable.
template <typename F>
double ks_statistic(std::vector<double> sample, F&& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double F_i = cdf(sample[i]);
        d = std::max(d, std::abs(F_i - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - F_i));
    }
    return d;
}

} // namespace oracle
