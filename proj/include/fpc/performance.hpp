#pragma once

#include <vector>

#include "fpc/harmonic.hpp"
#include "fpc/measure.hpp"

namespace fpc {

struct CriterionPoint {
    double x = 0.0;
    double t = 0.0;
    double u_x = 0.0;     // marginal criterion value; may underflow for huge t
    double log_u_x = 0.0; // always finite: -z + t/2
    double r = 0.0;       // local risk tolerance
    double r_x = 0.0;
    double p = 0.0;       // relative prudence x (1 + r_x) / r
};

double log_marginal_utility(const Measure& m, double x, double t);
double marginal_utility(const Measure& m, double x, double t);

double risk_tolerance(const Measure& m, double x, double t);
double risk_tolerance_x(const Measure& m, double x, double t);

// Second spatial derivative of r. The divided-difference path is the default
// so it can cross-check the moment identity; the analytic path evaluates
// (h_zzz h_z - h_zz^2) / r^3 directly.
double risk_tolerance_xx(const Measure& m, double x, double t, bool analytic = false);

double prudence(const Measure& m, double x, double t);

CriterionPoint criterion_point(const Measure& m, double x, double t);

// u(x, t) - u(x_ref, t) for each x in xs (xs positive, sorted ascending).
std::vector<double> utility_curve(const Measure& m, double x_ref, const std::vector<double>& xs,
                                  double t);

// Single difference u(x2, t) - u(x1, t).
double utility_diff(const Measure& m, double x1, double x2, double t);

// Same difference with the inverse points already known (z_i = h^{(-1)}(x_i, t));
// used by the simulator where z comes for free.
double utility_diff_from_z(const Measure& m, double z1, double z2, double t);

// u(x, t1) -> u(x, t0) time shift: u(x, t1) - u(x, t0) at fixed x,
// integrating u_t = -u_x r / 2 along the time axis.
double utility_time_shift(const Measure& m, double x, double t0, double t1);

// Central-difference estimate of r_t + r^2 r_xx / 2 built from r values only.
// Steps default to 1e-3 * max(1, x) and 1e-3 * max(1, t) when passed as <= 0.
double r_pde_residual(const Measure& m, double x, double t, double dx = 0.0, double dt = 0.0);

} // namespace fpc
