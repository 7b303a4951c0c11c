#include "fpc/performance.hpp"

#include <cmath>

#include "fpc/quadrature.hpp"
#include "fpc/special.hpp"

namespace fpc {

double log_marginal_utility(const Measure& m, double x, double t) {
    return -h_inverse(m, x, t).z + 0.5 * t;
}

double marginal_utility(const Measure& m, double x, double t) {
    return std::exp(log_marginal_utility(m, x, t));
}

double risk_tolerance(const Measure& m, double x, double t) {
    const InverseEval inv = h_inverse(m, x, t);
    return std::exp(m.log_moment(inv.z, t, 1));
}

double risk_tolerance_x(const Measure& m, double x, double t) {
    const InverseEval inv = h_inverse(m, x, t);
    return std::exp(m.log_moment(inv.z, t, 2) - m.log_moment(inv.z, t, 1));
}

double risk_tolerance_xx(const Measure& m, double x, double t, bool analytic) {
    if (analytic) {
        const InverseEval inv = h_inverse(m, x, t);
        const double lm1 = m.log_moment(inv.z, t, 1);
        const double lm2 = m.log_moment(inv.z, t, 2);
        const double lm3 = m.log_moment(inv.z, t, 3);
        // (h_zzz h_z - h_zz^2) / h_z^3
        return diff_exp(lm3 - 2.0 * lm1, 2.0 * lm2 - 3.0 * lm1);
    }
    const double dx = 1e-4 * std::max(1.0, x);
    const double rp = risk_tolerance(m, x + dx, t);
    const double r0 = risk_tolerance(m, x, t);
    const double rm = risk_tolerance(m, x - dx, t);
    return (rp - 2.0 * r0 + rm) / (dx * dx);
}

double prudence(const Measure& m, double x, double t) {
    const InverseEval inv = h_inverse(m, x, t);
    const double r = std::exp(m.log_moment(inv.z, t, 1));
    const double rx = std::exp(m.log_moment(inv.z, t, 2) - m.log_moment(inv.z, t, 1));
    return x * (1.0 + rx) / r;
}

CriterionPoint criterion_point(const Measure& m, double x, double t) {
    const InverseEval inv = h_inverse(m, x, t);
    CriterionPoint cp;
    cp.x = x;
    cp.t = t;
    cp.log_u_x = -inv.z + 0.5 * t;
    cp.u_x = std::exp(cp.log_u_x);
    cp.r = std::exp(m.log_moment(inv.z, t, 1));
    cp.r_x = std::exp(m.log_moment(inv.z, t, 2) - m.log_moment(inv.z, t, 1));
    cp.p = x * (1.0 + cp.r_x) / cp.r;
    return cp;
}

double utility_diff_from_z(const Measure& m, double z1, double z2, double t) {
    if (z1 == z2) return 0.0;
    // u(x2,t) - u(x1,t) = int_{z1}^{z2} u_x(h(z,t),t) h_z(z,t) dz, the exact
    // change of variables x = h(z,t); no inversions inside the quadrature.
    auto integrand = [&](double z) { return std::exp(0.5 * t - z + m.log_moment(z, t, 1)); };
    const double sign = z2 >= z1 ? 1.0 : -1.0;
    const double lo = std::min(z1, z2), hi = std::max(z1, z2);
    return sign * adaptive_simpson(integrand, lo, hi, 1e-10);
}

double utility_diff(const Measure& m, double x1, double x2, double t) {
    const double z1 = h_inverse(m, x1, t).z;
    InverseOptions opts;
    opts.has_hint = true;
    opts.z_hint = z1;
    const double z2 = h_inverse(m, x2, t, opts).z;
    return utility_diff_from_z(m, z1, z2, t);
}

std::vector<double> utility_curve(const Measure& m, double x_ref, const std::vector<double>& xs,
                                  double t) {
    if (!(x_ref > 0.0)) throw ValidationError("utility_curve: x_ref must be > 0");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0)) throw ValidationError("utility_curve: grid must be positive");
        if (i > 0 && !(xs[i] > xs[i - 1]))
            throw ValidationError("utility_curve: grid must be sorted ascending");
    }
    const double z_ref = h_inverse(m, x_ref, t).z;
    std::vector<double> out(xs.size());
    InverseOptions opts;
    opts.has_hint = true;
    opts.z_hint = z_ref;
    double prev_z = z_ref;
    double prev_u = 0.0; // u(x_ref) offset handled through z_ref start
    bool first = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        opts.z_hint = prev_z;
        const double z = h_inverse(m, xs[i], t, opts).z;
        if (first) {
            prev_u = utility_diff_from_z(m, z_ref, z, t);
            first = false;
        } else {
            prev_u += utility_diff_from_z(m, prev_z, z, t);
        }
        prev_z = z;
        out[i] = prev_u;
    }
    return out;
}

double utility_time_shift(const Measure& m, double x, double t0, double t1) {
    if (t0 == t1) return 0.0;
    // u_t = u_x^2 / (2 u_xx) = -u_x r / 2
    auto integrand = [&](double s) {
        const InverseEval inv = h_inverse(m, x, s);
        const double ux = std::exp(-inv.z + 0.5 * s);
        const double r = std::exp(m.log_moment(inv.z, s, 1));
        return -0.5 * ux * r;
    };
    return adaptive_simpson(integrand, t0, t1, 1e-11);
}

double r_pde_residual(const Measure& m, double x, double t, double dx, double dt) {
    if (dx <= 0.0) dx = 1e-3 * std::max(1.0, x);
    if (dt <= 0.0) dt = 1e-3 * std::max(1.0, t);
    if (!(t - dt > 0.0)) throw ValidationError("r_pde_residual: requires t - dt > 0");
    const double r0 = risk_tolerance(m, x, t);
    const double rtp = risk_tolerance(m, x, t + dt);
    const double rtm = risk_tolerance(m, x, t - dt);
    const double rxp = risk_tolerance(m, x + dx, t);
    const double rxm = risk_tolerance(m, x - dx, t);
    const double r_t = (rtp - rtm) / (2.0 * dt);
    const double r_xx = (rxp - 2.0 * r0 + rxm) / (dx * dx);
    return r_t + 0.5 * r0 * r0 * r_xx;
}

} // namespace fpc
