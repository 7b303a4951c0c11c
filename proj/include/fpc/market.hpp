#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpc/measure.hpp"

namespace fpc {

// Single-stock market with deterministic, piecewise-constant market price of
// risk. Rates are zero: wealth is already in present-value units.
class MarketModel {
public:
    // breakpoints: (t_from, lambda) pairs, first t_from must be 0; lambda holds
    // on [t_i, t_{i+1}).
    MarketModel(std::vector<std::pair<double, double>> breakpoints, double sigma);

    double lambda(double t) const;
    double sigma() const { return sigma_; }
    double drift() const; // implied mu = lambda(0) * sigma, for reporting
    double lambda_max() const { return lambda_max_; }

    // A_t = int_0^t lambda^2 ds, exact on the piecewise-constant segments.
    double a_process(double t) const;

    // True when A_t actually diverges (terminal lambda nonzero).
    bool a_diverges() const;

    const std::vector<std::pair<double, double>>& breakpoints() const { return breakpoints_; }

private:
    std::vector<std::pair<double, double>> breakpoints_;
    double sigma_ = 0.0;
    double lambda_max_ = 0.0;
};

double a_process(const MarketModel& mkt, double t);

struct WealthPaths {
    std::vector<double> times;   // n_steps + 1 entries
    std::vector<double> a_t;     // A at each time
    int n_paths = 0;
    // row-major [path][step]
    std::vector<double> x_star;
    std::vector<double> pi_star;
    std::vector<double> m_t;

    double at(const std::vector<double>& v, int path, std::size_t step) const {
        return v[static_cast<std::size_t>(path) * times.size() + step];
    }
};

// Closed-form optimal wealth/portfolio paths: X* = h(h^{(-1)}(x,0) + A + M, A),
// pi* = (lambda/sigma) h_z at the same point. Gaussian increments of M are
// drawn from a counter-based stream keyed by (seed, path), so output is
// reproducible bit-for-bit for a given seed.
WealthPaths simulate_optimal(const Measure& m, const MarketModel& mkt, double x, double horizon,
                             int n_steps, int n_paths, std::uint64_t seed);

// P(X*_t <= y) via the Gaussian law of M_t.
double wealth_cdf(const Measure& m, const MarketModel& mkt, double x, double t, double y);

struct MonteCarloCheck {
    double estimate = 0.0;  // E[u(X_T, A_T)] - u(x, 0), additive constant removed
    double std_error = 0.0;
    double reference = 0.0; // 0 by construction (both sides share the reference point)
    int floored_paths = 0;  // suboptimal simulation only
};

// Martingale test of the criterion along the optimal wealth.
MonteCarloCheck martingale_check(const Measure& m, const MarketModel& mkt, double x, double t,
                                 int n_paths, std::uint64_t seed);

// Supermartingale test along the constant-fraction strategy pi = kappa X
// (Euler-Maruyama with n_steps steps; paths absorbed at 1e-12 are counted).
MonteCarloCheck supermartingale_check(const Measure& m, const MarketModel& mkt, double x,
                                      double t, double kappa, int n_paths, int n_steps,
                                      std::uint64_t seed);

// CSV with columns time,path_id,x_star,pi_star.
std::string paths_to_csv(const WealthPaths& paths);

} // namespace fpc
