#pragma once

#include <vector>

#include "fpc/asymptotics.hpp"

namespace fpc {

// Two-parameter terminal datum I(x) = x^{-1/(1-theta)} + x^{-1/(1-gamma)} with
// 1/(1-gamma) = 2/(1-theta); the classical value function and risk tolerance
// are closed forms in tau = time to horizon.
struct ClassicalSpec {
    double theta = 0.0;
    double gamma = 0.0;  // (1 + theta)/2, so that 1 - gamma = (1 - theta)/2
    double lambda = 0.0;
    double alpha = 0.0;  // lambda^2 theta / (2 (1-theta)^2)
    double beta = 0.0;   // lambda^2 (1+theta) / (1-theta)^2

    ClassicalSpec(double theta_, double lambda_);
};

// Inverse spatial marginal value function v~(x, tau).
double classical_inverse_marginal(const ClassicalSpec& spec, double x, double tau);

// Risk tolerance r~(x, tau); the large-tau factor is handled in log form.
double classical_risk_tolerance(const ClassicalSpec& spec, double x, double tau);

struct ClassicalLimits {
    TurnpikeSeries spatial;  // over x at fixed tau0 = 1
    TurnpikeSeries temporal; // over tau at fixed x0 = 1
    double limit = 0.0;      // closed-form limit of both series: 2/(1-theta)
};

ClassicalLimits classical_limits(const ClassicalSpec& spec, const std::vector<double>& x_grid,
                                 const std::vector<double>& tau_grid);

} // namespace fpc
