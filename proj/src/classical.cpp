#include "fpc/classical.hpp"

#include <cmath>
#include <limits>

#include "fpc/errors.hpp"

namespace fpc {

ClassicalSpec::ClassicalSpec(double theta_, double lambda_) : theta(theta_), lambda(lambda_) {
    if (!(theta > 0.0 && theta < 1.0))
        throw ValidationError("classical: theta must lie in (0,1)");
    if (!std::isfinite(lambda)) throw ValidationError("classical: lambda must be finite");
    gamma = 0.5 * (1.0 + theta);
    const double om = 1.0 - theta;
    alpha = 0.5 * lambda * lambda * theta / (om * om);
    beta = lambda * lambda * (1.0 + theta) / (om * om);
}

double classical_inverse_marginal(const ClassicalSpec& spec, double x, double tau) {
    if (!(x > 0.0)) throw ValidationError("classical_inverse_marginal: x must be > 0");
    if (!(tau >= 0.0)) throw ValidationError("classical_inverse_marginal: tau must be >= 0");
    // Exponents are the marginal-utility powers 1/(1-theta), 1/(1-gamma); the
    // time factors e^{alpha tau}, e^{beta tau} are forced by the HJB transport
    // of each power mode and match the initial condition v~(x,0) = I(x).
    const double p1 = 1.0 / (1.0 - spec.theta);
    const double p2 = 1.0 / (1.0 - spec.gamma);
    return std::exp(spec.alpha * tau - p1 * std::log(x)) +
           std::exp(spec.beta * tau - p2 * std::log(x));
}

double classical_risk_tolerance(const ClassicalSpec& spec, double x, double tau) {
    if (!(x > 0.0)) throw ValidationError("classical_risk_tolerance: x must be > 0");
    if (!(tau >= 0.0)) throw ValidationError("classical_risk_tolerance: tau must be >= 0");
    const double ell = (spec.beta - 2.0 * spec.alpha) * tau; // >= 0
    // term1 = 2x / (1 + sqrt(1 + 4x e^{ell})), rearranged so e^{ell} never
    // materializes: multiply through by e^{-ell/2}.
    const double l4x = ell + std::log(4.0 * x);
    double term1;
    if (l4x > 700.0) {
        term1 = 2.0 * x * std::exp(-0.5 * l4x);
    } else {
        const double em = std::exp(-0.5 * ell);
        term1 = 2.0 * x * em / (em + std::sqrt(em * em + 4.0 * x));
    }
    // term2 = 8x^2 / (sqrt(F) + sqrt(F + 4x))^2 with F = e^{-ell} <= 1.
    const double F = std::exp(-ell);
    const double root = std::sqrt(F) + std::sqrt(F + 4.0 * x);
    const double term2 = 8.0 * x * x / (root * root);
    return (term1 + term2) / (1.0 - spec.theta);
}

ClassicalLimits classical_limits(const ClassicalSpec& spec, const std::vector<double>& x_grid,
                                 const std::vector<double>& tau_grid) {
    for (std::size_t i = 0; i < x_grid.size(); ++i)
        if (!(x_grid[i] > 0.0) || (i > 0 && !(x_grid[i] > x_grid[i - 1])))
            throw ValidationError("classical_limits: x grid must be positive increasing");
    for (std::size_t i = 0; i < tau_grid.size(); ++i)
        if (!(tau_grid[i] > 0.0) || (i > 0 && !(tau_grid[i] > tau_grid[i - 1])))
            throw ValidationError("classical_limits: tau grid must be positive increasing");

    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
    ClassicalLimits out;
    out.limit = 2.0 / (1.0 - spec.theta);

    out.spatial.axis = ScanAxis::Spatial;
    out.spatial.fixed = 1.0; // tau0
    out.spatial.label = "classical spatial series";
    for (double x : x_grid) {
        ScanRow row;
        row.grid = x;
        row.ratio = classical_risk_tolerance(spec, x, 1.0) / x;
        row.delta = kNaN;
        row.g_bound = kNaN;
        row.r_x = kNaN;
        row.h_inv = kNaN;
        row.prediction = out.limit;
        row.residual = std::abs(row.ratio - out.limit);
        out.spatial.rows.push_back(row);
    }

    out.temporal.axis = ScanAxis::Temporal;
    out.temporal.fixed = 1.0; // x0
    out.temporal.label = "classical temporal series";
    for (double tau : tau_grid) {
        ScanRow row;
        row.grid = tau;
        row.ratio = classical_risk_tolerance(spec, 1.0, tau);
        row.delta = kNaN;
        row.g_bound = kNaN;
        row.r_x = kNaN;
        row.h_inv = kNaN;
        row.prediction = out.limit;
        row.residual = std::abs(row.ratio - out.limit);
        out.temporal.rows.push_back(row);
    }
    return out;
}

} // namespace fpc
