#include "fpc/asymptotics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "fpc/harmonic.hpp"
#include "fpc/special.hpp"

namespace fpc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// G evaluated with the inverse point already solved. The integrands carry the
// nonnegative weight (y - a), so the result is clamped at 0 against the
// rounding noise of the log-space subtraction.
double g_bound_at(const Measure& m, double x0, double t, double z) {
    const SupportInfo& si = m.support();
    const double a = si.a;
    const double d = z / t - 0.5 * a;
    if (d <= 0.0) {
        // int (y - a) e^{-t y (y - a)/2} mu(dy): exponent y(at/2) - y^2 t/2
        const double za = 0.5 * a * t;
        const double lm1 = m.log_moment(za, t, 1);
        const double lm0 = m.log_moment(za, t, 0);
        if (a == 0.0) return std::exp(lm1);
        return std::max(0.0, diff_exp(lm1, std::log(a) + lm0));
    }
    const double lo = a + 2.0 * d;
    double tail = 0.0;
    if (lo < si.b || m.mass_between(lo, si.b) > 0.0) {
        const double lm1 = m.log_moment_tail(z, t, 1, lo);
        const double lm0 = m.log_moment_tail(z, t, 0, lo);
        if (lm1 != -std::numeric_limits<double>::infinity())
            tail = a == 0.0 ? std::exp(lm1)
                            : std::max(0.0, diff_exp(lm1, std::log(a) + lm0));
    }
    return 2.0 * d * x0 + tail;
}

} // namespace

MeasureClassification classify(const Measure& m) {
    const SupportInfo& si = m.support();
    MeasureClassification c;
    c.temporal_limit = si.a;
    if (si.mass_at_b > 0.0)
        c.spatial_limit = si.b;
    c.assumption2_holds = true;
    c.assumption1_holds = std::abs(si.mass_at_b - 1.0) <= 1e-12;
    if (si.mass_at_b > 0.0 && !c.assumption1_holds)
        c.note = "mass at b differs from 1; the datum rescaled by that mass satisfies the "
                 "normalization and the limits are unaffected";
    if (si.mass_at_b == 0.0)
        c.note = "no mass at the right support endpoint: the spatial turnpike fails";
    c.prudence_spatial = 2.0 - si.gamma;
    c.prudence_temporal = (si.a > 0.0) ? 1.0 + 1.0 / si.a
                                       : std::numeric_limits<double>::infinity();
    return c;
}

double delta(const Measure& m, double x0, double t) {
    if (!(t > 0.0)) throw ValidationError("delta: t must be > 0");
    const InverseEval inv = h_inverse(m, x0, t);
    return inv.z / t - 0.5 * m.support().a;
}

double g_bound(const Measure& m, double x0, double t) {
    if (!(t > 0.0)) throw ValidationError("g_bound: t must be > 0");
    const InverseEval inv = h_inverse(m, x0, t);
    return g_bound_at(m, x0, t, inv.z);
}

TurnpikeSeries scan_temporal(const Measure& m, double x0, const std::vector<double>& t_grid) {
    if (!(x0 > 0.0)) throw ValidationError("scan_temporal: x0 must be > 0");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0.0)) throw ValidationError("scan_temporal: grid must be positive");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
            throw ValidationError("scan_temporal: grid must be increasing");
    }
    const SupportInfo& si = m.support();
    TurnpikeSeries s;
    s.axis = ScanAxis::Temporal;
    s.fixed = x0;
    {
        std::ostringstream os;
        os << "temporal limit " << si.a;
        s.label = os.str();
    }
    std::ostringstream diag;

    InverseOptions opts;
    for (double t : t_grid) {
        const InverseEval inv = h_inverse(m, x0, t, opts);
        opts.has_hint = true;
        opts.z_hint = inv.z;
        ScanRow row;
        row.grid = t;
        row.h_inv = inv.z;
        row.ratio = std::exp(m.log_moment(inv.z, t, 1)) / x0;
        row.delta = inv.z / t - 0.5 * si.a;
        row.g_bound = g_bound_at(m, x0, t, inv.z);
        row.r_x = kNaN;
        row.prediction = kNaN;
        row.residual = kNaN;
        if (m.kind() == Measure::Kind::Dirac) {
            row.prediction = dirac_expansion(m, x0, t).h_inv_temporal;
            row.residual = std::abs(inv.z - row.prediction);
        } else if (m.kind() == Measure::Kind::Lebesgue) {
            if (si.a > 0.0) {
                row.prediction = 0.5 * si.a * t +
                                 (std::log(t) + std::log(x0) + std::log(0.5 * si.a)) / si.a;
                row.residual = std::abs(inv.z - row.prediction);
            } else {
                const double arg = std::log(t) + 2.0 * std::log(x0) - std::log(2.0 * std::numbers::pi);
                if (arg > 0.0) {
                    row.prediction = std::sqrt(t * arg);
                    row.residual = std::abs(inv.z - row.prediction);
                }
            }
        }

        // Proposition-8 style bounds, checked as running diagnostics.
        if (si.a > 0.0 && row.delta < 0.0) {
            const double bound = std::log(si.total_mass / x0) / (si.a * t);
            if (std::abs(row.delta) > bound + 1e-12) {
                s.diagnostics_ok = false;
                diag << "delta<0 bound violated at t=" << t << "; ";
            }
        } else if (si.a > 0.0 && row.delta > 0.0) {
            const double lhs = m.mass_between(si.a, si.a + row.delta) *
                               std::exp(0.5 * t * si.a * row.delta);
            if (x0 < lhs * (1.0 - 1e-12)) {
                s.diagnostics_ok = false;
                diag << "delta>0 bound violated at t=" << t << "; ";
            }
        } else if (si.a == 0.0 && row.delta > 0.0) {
            // free parameter theta = 1/2
            const double lhs = m.mass_between(row.delta, 1.5 * row.delta) *
                               std::exp(0.375 * t * row.delta * row.delta);
            if (x0 < lhs * (1.0 - 1e-12)) {
                s.diagnostics_ok = false;
                diag << "delta bound (a=0+, theta=1/2) violated at t=" << t << "; ";
            }
        }
        s.rows.push_back(row);
    }
    s.diagnostics = diag.str();
    return s;
}

TurnpikeSeries scan_spatial(const Measure& m, double t0, const std::vector<double>& x_grid) {
    if (!(t0 >= 0.0)) throw ValidationError("scan_spatial: t0 must be >= 0");
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        if (!(x_grid[i] > 0.0)) throw ValidationError("scan_spatial: grid must be positive");
        if (i > 0 && !(x_grid[i] > x_grid[i - 1]))
            throw ValidationError("scan_spatial: grid must be increasing");
    }
    const SupportInfo& si = m.support();
    TurnpikeSeries s;
    s.axis = ScanAxis::Spatial;
    s.fixed = t0;
    s.spatial_fails = (si.mass_at_b == 0.0);
    if (s.spatial_fails) {
        std::ostringstream os;
        os << "no mass at b: spatial turnpike fails; growth-law ratio r/(x ln ln x) -> "
           << (1.0 - si.gamma) / (t0 > 0.0 ? t0 : 1.0);
        s.label = os.str();
    } else {
        std::ostringstream os;
        os << "spatial limit " << si.b;
        s.label = os.str();
    }

    InverseOptions opts;
    for (double x : x_grid) {
        const InverseEval inv = h_inverse(m, x, t0, opts);
        opts.has_hint = true;
        opts.z_hint = inv.z;
        ScanRow row;
        row.grid = x;
        row.h_inv = inv.z;
        const double lm1 = m.log_moment(inv.z, t0, 1);
        row.ratio = std::exp(lm1) / x;
        row.r_x = std::exp(m.log_moment(inv.z, t0, 2) - lm1);
        row.delta = kNaN;
        row.g_bound = kNaN;
        row.prediction = kNaN;
        row.residual = kNaN;
        if (m.kind() == Measure::Kind::Dirac) {
            row.prediction = dirac_expansion(m, x, t0).r_spatial;
            row.residual = std::abs(std::exp(lm1) - row.prediction);
        } else if (m.kind() == Measure::Kind::Lebesgue) {
            const double pred = lebesgue_expansion(si.a, si.b, x, t0).r_spatial;
            if (std::isfinite(pred)) {
                row.prediction = pred;
                row.residual = std::abs(std::exp(lm1) - pred);
            }
        }
        s.rows.push_back(row);
    }
    return s;
}

double lambert_w(double x) {
    const double brk = -std::exp(-1.0);
    if (std::isnan(x) || x < brk)
        throw ValidationError("lambert_w: argument below -1/e");
    if (x == 0.0) return 0.0;
    if (x == brk) return -1.0;

    double w;
    if (x > 3.0) {
        // Solve ln w + w = ln x by Newton; immune to overflow of w e^w.
        const double lx = std::log(x);
        w = lx > 1.0 ? lx - std::log(lx) : 1.0;
        for (int it = 0; it < 100; ++it) {
            const double f = std::log(w) + w - lx;
            const double dw = f * w / (1.0 + w);
            w -= dw;
            if (std::abs(dw) <= 2e-16 * (1.0 + std::abs(w))) break;
        }
        return w;
    }
    if (x > -0.25) {
        w = x >= 0.0 ? x / (1.0 + x) : x * (1.0 - x);
    } else {
        // near the branch point: series in sqrt(2 (e x + 1))
        const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
        w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
    }
    for (int it = 0; it < 100; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        if (denom == 0.0) break;
        const double dw = f / denom;
        w -= dw;
        if (std::abs(dw) <= 2e-16 * (1.0 + std::abs(w))) break;
    }
    return w;
}

DiracExpansion dirac_expansion(const Measure& m, double x, double t) {
    if (m.kind() != Measure::Kind::Dirac)
        throw ValidationError("dirac_expansion: measure is not a Dirac mixture");
    const auto& d = std::get<DiracMixture>(m.body());
    const SupportInfo& si = m.support();
    const double y1 = d.points.front();
    const double one_minus_gamma = 1.0 - si.gamma; // = 1/b
    // Weighted mixtures shift the surviving-atom constants by the atom weight;
    // for unit weights these reduce to the plain expansions.
    const double w1 = d.weights.front();
    const double wN = d.weights.back();

    DiracExpansion e;
    e.h_inv_temporal = 0.5 * y1 * t + std::log(x / w1) / y1;
    e.h_inv_spatial = one_minus_gamma * std::log(x / wN) + 0.5 * t / one_minus_gamma;
    e.r_temporal = y1 * x;
    double rs = 0.0;
    for (std::size_t n = 0; n < d.points.size(); ++n) {
        const double yn = d.points[n];
        rs += d.weights[n] * yn * std::exp(0.5 * yn * t * (si.b - yn)) *
              std::pow(x / wN, one_minus_gamma * yn);
    }
    e.r_spatial = rs;
    return e;
}

LebesgueExpansion lebesgue_expansion(double a, double b, double x, double t) {
    if (!(b > a) || a < 0.0) throw ValidationError("lebesgue_expansion: need 0 <= a < b");
    if (!(x > 0.0)) throw ValidationError("lebesgue_expansion: x must be > 0");
    const double gamma = 1.0 - 1.0 / b;
    const double og = 1.0 - gamma; // 1/b
    LebesgueExpansion e;
    e.h_inv_temporal = kNaN;
    e.h_inv_temporal_zero_a = kNaN;
    e.h_inv_spatial = kNaN;
    e.r_spatial = kNaN;
    if (a > 0.0 && t > 0.0)
        e.h_inv_temporal = 0.5 * a * t + (std::log(t) + std::log(x) + std::log(0.5 * a)) / a;
    if (a == 0.0 && t > 1.0) {
        const double arg = std::log(t) + 2.0 * std::log(x) - std::log(2.0 * std::numbers::pi);
        if (arg > 0.0) e.h_inv_temporal_zero_a = std::sqrt(arg / t);
    }
    if (x > 1.0) {
        const double lx = std::log(x);
        e.h_inv_spatial = 0.5 * t / og + og * (lx + std::log(lx) - std::log(b));
        if (t > 0.0) {
            e.r_spatial = og / t * x * std::log(lx) +
                          std::pow(og * x * lx, a * og) * std::exp(0.5 * a * (b - a) * t) / t +
                          0.5 * x / og - og / t * x * std::log(b);
        } else {
            e.r_spatial = x / og * (1.0 - 1.0 / lx);
        }
    }
    return e;
}

std::vector<VariationRow> regular_variation_check(const Measure& m,
                                                  const std::vector<double>& k_values,
                                                  const std::vector<double>& x_grid) {
    const SupportInfo& si = m.support();
    std::vector<VariationRow> rows;
    for (double k : k_values) {
        if (!(k > 0.0)) throw ValidationError("regular_variation_check: k must be > 0");
        for (double x : x_grid) {
            VariationRow row;
            row.k = k;
            row.x = x;
            const double zx = h_inverse(m, x, 0.0).z;
            const double zkx = h_inverse(m, k * x, 0.0).z;
            row.ratio = std::exp(zx - zkx); // u0'(kx)/u0'(x) = e^{-(z(kx) - z(x))}
            row.reference = std::pow(k, si.gamma - 1.0);
            row.residual = std::abs(row.ratio - row.reference);
            rows.push_back(row);
        }
    }
    return rows;
}

std::string series_to_csv(const TurnpikeSeries& s) {
    std::string out = "grid,ratio,delta,g_bound,prediction,residual\n";
    char buf[64];
    auto field = [&](double v) {
        if (std::isnan(v)) return std::string();
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::string(buf);
    };
    for (const ScanRow& row : s.rows) {
        out += field(row.grid) + ',' + field(row.ratio) + ',' + field(row.delta) + ',' +
               field(row.g_bound) + ',' + field(row.prediction) + ',' + field(row.residual) +
               '\n';
    }
    return out;
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2)
        throw ValidationError("geometric_grid: need 0 < lo < hi and points >= 2");
    std::vector<double> g(points);
    const double ratio = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i) g[i] = lo * std::exp(ratio * i);
    g.front() = lo;
    g.back() = hi;
    return g;
}

} // namespace fpc
