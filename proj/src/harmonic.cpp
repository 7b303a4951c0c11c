#include "fpc/harmonic.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace fpc {

double log_h(const Measure& m, double z, double t) { return m.log_moment(z, t, 0); }

HarmonicEval h_eval(const Measure& m, double z, double t) {
    HarmonicEval e;
    e.z = z;
    e.t = t;
    e.h = exp_moment(m, z, t, 0);
    e.h_z = exp_moment(m, z, t, 1);
    e.h_zz = exp_moment(m, z, t, 2);
    e.h_zzz = exp_moment(m, z, t, 3);
    e.h_t = -0.5 * e.h_zz;
    return e;
}

InverseEval h_inverse(const Measure& m, double x, double t, const InverseOptions& opts) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError("h_inverse: x must be > 0");
    if (!(t >= 0.0)) throw ValidationError("h_inverse: t must be >= 0");

    const SupportInfo& si = m.support();
    const double lx = std::log(x);
    auto f = [&](double z) { return m.log_moment(z, t, 0) - lx; };

    double z0;
    if (opts.has_hint) {
        z0 = opts.z_hint;
    } else {
        // Seeded from the two asymptotic regimes: spatial (1-gamma) ln x and
        // temporal a t / 2.
        z0 = (1.0 - si.gamma) * lx + 0.5 * si.a * t;
    }

    double f0 = f(z0);
    double zlo = z0, zhi = z0, flo = f0, fhi = f0;
    // log h is strictly increasing in z with slope in (0, b]; expand toward the
    // root geometrically until the sign changes.
    double step = std::max(1.0, std::abs(f0) / si.b);
    constexpr double kMaxZ = 1e6;
    while (flo > 0.0) {
        zlo -= step;
        step *= 2.0;
        if (std::abs(zlo) > kMaxZ) {
            std::ostringstream os;
            os << "h_inverse: failed to bracket root for x = " << x << ", t = " << t
               << " within |z| <= 1e6";
            throw ConvergenceError(os.str());
        }
        flo = f(zlo);
    }
    step = std::max(1.0, std::abs(f0) / si.b);
    while (fhi < 0.0) {
        zhi += step;
        step *= 2.0;
        if (std::abs(zhi) > kMaxZ) {
            std::ostringstream os;
            os << "h_inverse: failed to bracket root for x = " << x << ", t = " << t
               << " within |z| <= 1e6";
            throw ConvergenceError(os.str());
        }
        fhi = f(zhi);
    }

    // Illinois-damped secant inside the bracket, then slope-based polish.
    double z = zhi, fz = fhi;
    if (flo == 0.0) {
        z = zlo;
        fz = 0.0;
    }
    int side = 0;
    for (int it = 0; it < 200; ++it) {
        if (std::abs(fz) <= opts.rtol) break;
        if (zhi - zlo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(zlo)))
            break; // resolution limit of double z; best achievable
        double cand;
        if (fhi != flo) {
            cand = zhi - fhi * (zhi - zlo) / (fhi - flo);
        } else {
            cand = 0.5 * (zlo + zhi);
        }
        if (!(cand > zlo && cand < zhi)) cand = 0.5 * (zlo + zhi);
        const double fc = f(cand);
        if (fc == 0.0) {
            z = cand;
            fz = 0.0;
            break;
        }
        if (fc < 0.0) {
            zlo = cand;
            flo = fc;
            if (side == -1) fhi *= 0.5;
            side = -1;
        } else {
            zhi = cand;
            fhi = fc;
            if (side == 1) flo *= 0.5;
            side = 1;
        }
        z = cand;
        fz = fc;
        // Newton polish once inside the linear regime; d(log h)/dz = h_z/h.
        if (std::abs(fz) < 1e-3) {
            const double slope = std::exp(m.log_moment(z, t, 1) - m.log_moment(z, t, 0));
            if (slope > 0.0 && std::isfinite(slope)) {
                const double zn = z - fz / slope;
                if (zn > zlo && zn < zhi) {
                    const double fn = f(zn);
                    if (std::abs(fn) < std::abs(fz)) {
                        z = zn;
                        fz = fn;
                        if (fn < 0.0) {
                            zlo = zn;
                            flo = fn;
                        } else {
                            zhi = zn;
                            fhi = fn;
                        }
                    }
                }
            }
        }
    }

    InverseEval inv;
    inv.x = x;
    inv.t = t;
    inv.z = z;
    inv.z_t = 0.5 * std::exp(m.log_moment(z, t, 2) - m.log_moment(z, t, 1));
    return inv;
}

double heat_residual(const Measure& m, double z, double t, double dz, double dt) {
    const double scale = std::max({1.0, std::abs(z), t});
    if (dz <= 0.0) dz = 1e-4 * scale;
    if (dt <= 0.0) dt = 1e-4 * scale;
    if (!(t - dt > 0.0)) throw ValidationError("heat_residual: requires t - dt > 0");
    const double h0 = h_eval(m, z, t).h;
    const double hp = h_eval(m, z, t + dt).h;
    const double hm = h_eval(m, z, t - dt).h;
    const double hzp = h_eval(m, z + dz, t).h;
    const double hzm = h_eval(m, z - dz, t).h;
    const double h_t = (hp - hm) / (2.0 * dt);
    const double h_zz = (hzp - 2.0 * h0 + hzm) / (dz * dz);
    return h_t + 0.5 * h_zz;
}

} // namespace fpc
