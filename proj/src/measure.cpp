#include "fpc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fpc/special.hpp"

namespace fpc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double binom(int k, int j) {
    static const double table[5][5] = {{1, 0, 0, 0, 0},
                                       {1, 1, 0, 0, 0},
                                       {1, 2, 1, 0, 0},
                                       {1, 3, 3, 1, 0},
                                       {1, 4, 6, 4, 1}};
    return table[k][j];
}

// Lower incomplete gamma for integer order n in [1,5].
double gamma_lower_int(int n, double s) {
    if (s <= 0.0) return 0.0;
    double fact = 1.0; // (n-1)!
    for (int i = 2; i < n; ++i) fact *= i;
    if (s > 45.0) return fact;
    if (s <= n + 2.0) {
        // gamma(n,s) = s^n e^{-s} sum_i s^i / (n (n+1) ... (n+i))
        double c = 1.0 / n;
        double sum = c;
        for (int i = 1; i < 200; ++i) {
            c *= s / (n + i);
            sum += c;
            if (c < sum * 1e-17) break;
        }
        return std::pow(s, n) * std::exp(-s) * sum;
    }
    double g = -std::expm1(-s); // gamma(1,s)
    const double es = std::exp(-s);
    double spow = 1.0;
    for (int m = 1; m < n; ++m) {
        spow *= s;
        g = m * g - spow * es;
    }
    return g;
}

// G_j(p, L) = int_0^L w^j e^{-p w} dw,  p > 0.
double decay_moment(int j, double p, double L) {
    return gamma_lower_int(j + 1, p * L) / std::pow(p, j + 1);
}

// ---- segment moments: int_lo^hi y^k e^{y z - y^2 t / 2} dy, in log space ----

double log_segment_moment_t0(double lo, double hi, double z, int k) {
    const double L = hi - lo;
    if (std::abs(z) * hi <= 0.5) {
        // Short power series; first term dominates so the sum stays positive.
        double sum = 0.0, zj = 1.0, fact = 1.0;
        for (int j = 0; j < 60; ++j) {
            if (j > 0) {
                zj *= z;
                fact *= j;
            }
            const double term =
                zj / fact * (std::pow(hi, k + j + 1) - std::pow(lo, k + j + 1)) / (k + j + 1);
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-17 && j > 2) break;
        }
        return std::log(sum);
    }
    if (z > 0.0) {
        // Anchor at hi: (hi - w)^k expands with alternating signs bounded by (L/hi)^j.
        double sum = 0.0;
        for (int j = 0; j <= k; ++j)
            sum += binom(k, j) * std::pow(hi, k - j) * (j % 2 ? -1.0 : 1.0) *
                   decay_moment(j, z, L);
        return z * hi + std::log(sum);
    }
    // z < 0: anchor at lo, all terms positive.
    double sum = 0.0;
    for (int j = 0; j <= k; ++j)
        sum += binom(k, j) * std::pow(lo, k - j) * decay_moment(j, -z, L);
    return z * lo + std::log(sum);
}

double log_segment_moment_gl(double lo, double hi, double z, double t, int k,
                             const std::vector<double>* grid_values, double grid_a,
                             double grid_b, int panels, const GaussRule& rule) {
    // Restrict to the sub-interval where the exponent is within ~250 nats of its
    // max over [lo, hi]; outside it the integrand is zero at double precision.
    constexpr double kDrop = 250.0;
    double wl = lo, wh = hi;
    if (t > 0.0) {
        const double m = z / t;
        const double p = std::clamp(m, lo, hi);
        const double R = std::sqrt((p - m) * (p - m) + 2.0 * kDrop / t);
        wl = std::max(lo, m - R);
        wh = std::min(hi, m + R);
    } else if (z > 0.0) {
        wl = std::max(lo, hi - kDrop / z);
    } else if (z < 0.0) {
        wh = std::min(hi, lo - kDrop / z);
    }
    if (!(wh > wl)) return kNegInf;

    const double pw = (wh - wl) / panels;
    double gmax = kNegInf;
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(panels) * rule.nodes.size());
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double c0 = wl + pnl * pw, c1 = c0 + pw;
        const double mid = 0.5 * (c0 + c1), half = 0.5 * (c1 - c0);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double y = mid + half * rule.nodes[i];
            double gi = y * z - 0.5 * y * y * t;
            if (k > 0) gi += k * std::log(y);
            if (grid_values) {
                // piecewise-linear density sample
                const double s = (y - grid_a) / (grid_b - grid_a) *
                                 (static_cast<double>(grid_values->size()) - 1.0);
                const auto i0 = static_cast<std::size_t>(std::clamp(
                    s, 0.0, static_cast<double>(grid_values->size()) - 2.0));
                const double frac = s - static_cast<double>(i0);
                const double v =
                    (*grid_values)[i0] * (1.0 - frac) + (*grid_values)[i0 + 1] * frac;
                gi += v > 0.0 ? std::log(v) : kNegInf;
            }
            g.push_back(gi);
            gmax = std::max(gmax, gi);
        }
    }
    if (gmax == kNegInf) return kNegInf;
    double sum = 0.0;
    std::size_t idx = 0;
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double half = 0.5 * pw;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i, ++idx)
            sum += rule.weights[i] * half * std::exp(g[idx] - gmax);
    }
    return gmax + std::log(sum);
}

const GaussRule& default_rule() {
    static const GaussRule rule = gauss_legendre(16);
    return rule;
}

double log_segment_moment(double lo, double hi, double z, double t, int k) {
    if (!(hi > lo)) return kNegInf;
    if (t == 0.0) return log_segment_moment_t0(lo, hi, z, k);

    const double sqt = std::sqrt(t);
    const double m = z / t;
    const double alpha = (lo - m) * sqt;
    const double beta = (hi - m) * sqt;

    bool use_closed = (beta - alpha) >= 0.1;
    if (use_closed && k > 0) {
        // The binomial recombination below amplifies roundoff by roughly
        // ((|m| + reach)/y_typ)^k; hand the ill-conditioned cases to quadrature.
        const double p = std::clamp(m, lo, hi);
        double ytyp = p;
        if (alpha >= 0.0) ytyp = std::min(hi, lo + 1.0 / (sqt * std::max(alpha, 1.0)));
        else if (beta <= 0.0) ytyp = hi;
        else ytyp = std::max(p, std::min(hi, 1.0 / sqt));
        const double reach = std::abs(m) + std::abs(p - m) + 1.0 / sqt;
        const double amp = std::pow(reach / std::max(ytyp, 1e-300), k);
        if (!(amp <= 1e3)) use_closed = false;
    }
    if (!use_closed)
        return log_segment_moment_gl(lo, hi, z, t, k, nullptr, 0, 0, 64, default_rule());

    const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    const double sqrt_halfpi = std::sqrt(std::numbers::pi / 2.0);

    double c, base;
    if (alpha >= 0.0) {
        c = alpha;
        base = lo * z - 0.5 * lo * lo * t;
    } else if (beta <= 0.0) {
        c = beta;
        base = hi * z - 0.5 * hi * hi * t;
    } else {
        c = 0.0;
        base = 0.5 * m * z;
    }

    // Scaled Gaussian moment integrals I~_j = e^{c^2/2} int_alpha^beta u^j e^{-u^2/2} du.
    double I[5];
    if (alpha >= 0.0) {
        I[0] = sqrt_halfpi * (erfcx(alpha * inv_sqrt2) -
                              std::exp(0.5 * (alpha * alpha - beta * beta)) *
                                  erfcx(beta * inv_sqrt2));
    } else if (beta <= 0.0) {
        I[0] = sqrt_halfpi * (erfcx(-beta * inv_sqrt2) -
                              std::exp(0.5 * (beta * beta - alpha * alpha)) *
                                  erfcx(-alpha * inv_sqrt2));
    } else {
        I[0] = sqrt_halfpi * (std::erf(beta * inv_sqrt2) - std::erf(alpha * inv_sqrt2));
    }
    const double ea = 0.5 * (c * c - alpha * alpha); // <= 0
    const double eb = 0.5 * (c * c - beta * beta);   // <= 0
    const double Ea = std::exp(ea), Eb = std::exp(eb);
    if (k >= 1) I[1] = diff_exp(ea, eb);
    for (int j = 2; j <= k; ++j)
        I[j] = std::pow(alpha, j - 1) * Ea - std::pow(beta, j - 1) * Eb + (j - 1) * I[j - 2];

    double S = 0.0;
    for (int j = 0; j <= k; ++j)
        S += binom(k, j) * std::pow(m, k - j) * std::pow(sqt, -j) * I[j];
    if (!(S > 0.0))
        return log_segment_moment_gl(lo, hi, z, t, k, nullptr, 0, 0, 64, default_rule());
    return base + std::log(S) - 0.5 * std::log(t);
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError(msg);
}

} // namespace

Measure make_dirac_mixture(std::vector<double> points, std::vector<double> weights) {
    require(!points.empty(), "dirac measure: points must be non-empty");
    require(points.size() == weights.size(),
            "dirac measure: points and weights length mismatch");
    for (std::size_t i = 0; i < points.size(); ++i) {
        require(std::isfinite(points[i]) && points[i] > 0.0,
                "dirac measure: points must be finite and > 0");
        require(std::isfinite(weights[i]) && weights[i] > 0.0,
                "dirac measure: weights must be finite and > 0");
        if (i > 0)
            require(points[i] > points[i - 1],
                    "dirac measure: points must be strictly increasing");
    }
    DiracMixture d;
    d.points = std::move(points);
    d.weights = std::move(weights);
    d.log_weights.reserve(d.weights.size());
    for (double w : d.weights) d.log_weights.push_back(std::log(w));

    Measure m;
    m.info_.a = d.points.front();
    m.info_.b = d.points.back();
    m.info_.a_is_open_zero = false;
    m.info_.mass_at_b = d.weights.back();
    m.info_.gamma = 1.0 - 1.0 / m.info_.b;
    m.info_.total_mass = 0.0;
    for (double w : d.weights) m.info_.total_mass += w;
    m.body_ = std::move(d);
    return m;
}

Measure make_lebesgue(double a, double b) {
    require(std::isfinite(a) && std::isfinite(b), "lebesgue measure: endpoints must be finite");
    require(a >= 0.0, "lebesgue measure: a must be >= 0");
    require(b > a, "lebesgue measure: b must exceed a");
    Measure m;
    m.body_ = LebesgueSegment{a, b};
    m.info_.a = a;
    m.info_.a_is_open_zero = (a == 0.0);
    m.info_.b = b;
    m.info_.mass_at_b = 0.0;
    m.info_.gamma = 1.0 - 1.0 / b;
    m.info_.total_mass = b - a;
    return m;
}

Measure make_tabulated(double a, double b, std::vector<double> values, int panels, int order) {
    require(std::isfinite(a) && std::isfinite(b), "density measure: endpoints must be finite");
    require(a >= 0.0, "density measure: a must be >= 0");
    require(b > a, "density measure: b must exceed a");
    require(values.size() >= 2, "density measure: need at least two samples");
    double total = 0.0;
    for (double v : values) {
        require(std::isfinite(v) && v >= 0.0, "density measure: samples must be >= 0");
        total += v;
    }
    require(total > 0.0, "density measure: total mass must be > 0");
    require(panels >= 1 && panels <= 4096, "density measure: panels out of range");
    require(order >= 2 && order <= 64, "density measure: quadrature order out of range");

    TabulatedDensity td;
    td.a = a;
    td.b = b;
    td.values = std::move(values);
    td.panels = panels;
    td.order = order;
    td.rule = gauss_legendre(order);

    Measure m;
    m.info_.a = a;
    m.info_.a_is_open_zero = (a == 0.0);
    m.info_.b = b;
    m.info_.mass_at_b = 0.0;
    m.info_.gamma = 1.0 - 1.0 / b;
    m.body_ = std::move(td);
    m.info_.total_mass = m.mass_between(a, b);
    return m;
}

Measure::Kind Measure::kind() const {
    if (std::holds_alternative<DiracMixture>(body_)) return Kind::Dirac;
    if (std::holds_alternative<LebesgueSegment>(body_)) return Kind::Lebesgue;
    return Kind::Tabulated;
}

double Measure::log_moment(double z, double t, int k) const {
    return log_moment_tail(z, t, k, -std::numeric_limits<double>::infinity());
}

double Measure::log_moment_tail(double z, double t, int k, double lo) const {
    if (!(std::isfinite(z))) throw ValidationError("exp_moment: z must be finite");
    if (!(t >= 0.0)) throw ValidationError("exp_moment: t must be >= 0");
    if (k < 0 || k > 4) throw ValidationError("exp_moment: k must be in [0,4]");

    if (const auto* d = std::get_if<DiracMixture>(&body_)) {
        double lmax = kNegInf;
        std::vector<double> terms;
        terms.reserve(d->points.size());
        for (std::size_t i = 0; i < d->points.size(); ++i) {
            const double y = d->points[i];
            if (y < lo) continue;
            const double L = d->log_weights[i] + k * std::log(y) + y * z - 0.5 * y * y * t;
            terms.push_back(L);
            lmax = std::max(lmax, L);
        }
        if (terms.empty() || lmax == kNegInf) return kNegInf;
        double sum = 0.0;
        for (double L : terms) sum += std::exp(L - lmax);
        return lmax + std::log(sum);
    }
    if (const auto* s = std::get_if<LebesgueSegment>(&body_)) {
        return log_segment_moment(std::max(lo, s->a), s->b, z, t, k);
    }
    const auto& td = std::get<TabulatedDensity>(body_);
    return log_segment_moment_gl(std::max(lo, td.a), td.b, z, t, k, &td.values, td.a, td.b,
                                 td.panels, td.rule);
}

double Measure::mass_between(double lo, double hi) const {
    if (!(hi >= lo)) return 0.0;
    if (const auto* d = std::get_if<DiracMixture>(&body_)) {
        double sum = 0.0;
        for (std::size_t i = 0; i < d->points.size(); ++i)
            if (d->points[i] >= lo && d->points[i] <= hi) sum += d->weights[i];
        return sum;
    }
    if (const auto* s = std::get_if<LebesgueSegment>(&body_)) {
        const double l = std::max(lo, s->a), h = std::min(hi, s->b);
        return h > l ? h - l : 0.0;
    }
    const auto& td = std::get<TabulatedDensity>(body_);
    const double l = std::max(lo, td.a), h = std::min(hi, td.b);
    if (!(h > l)) return 0.0;
    // density is piecewise linear, so cell-wise trapezoids are exact
    const auto n = td.values.size();
    const double dy = (td.b - td.a) / (static_cast<double>(n) - 1.0);
    auto value_at = [&](double y) {
        const double s = (y - td.a) / dy;
        const auto i0 =
            static_cast<std::size_t>(std::clamp(s, 0.0, static_cast<double>(n) - 2.0));
        const double frac = s - static_cast<double>(i0);
        return td.values[i0] * (1.0 - frac) + td.values[i0 + 1] * frac;
    };
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double c0 = td.a + static_cast<double>(i) * dy;
        const double c1 = c0 + dy;
        const double s0 = std::max(l, c0), s1 = std::min(h, c1);
        if (s1 > s0) sum += (s1 - s0) * 0.5 * (value_at(s0) + value_at(s1));
    }
    return sum;
}

SupportInfo support(const Measure& m) { return m.support(); }

double log_exp_moment(const Measure& m, double z, double t, int k) {
    return m.log_moment(z, t, k);
}

double exp_moment(const Measure& m, double z, double t, int k) {
    const double lg = m.log_moment(z, t, k);
    if (!(std::abs(lg) <= 708.0)) {
        std::ostringstream os;
        os << "exp_moment: result magnitude not representable (log = " << lg << ") at z = " << z
           << ", t = " << t << ", k = " << k;
        throw RangeError(os.str());
    }
    return std::exp(lg);
}

} // namespace fpc
