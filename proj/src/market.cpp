#include "fpc/market.hpp"

#include <cmath>
#include <cstdio>

#include "fpc/harmonic.hpp"
#include "fpc/performance.hpp"
#include "fpc/rng.hpp"
#include "fpc/special.hpp"

namespace fpc {

MarketModel::MarketModel(std::vector<std::pair<double, double>> breakpoints, double sigma)
    : breakpoints_(std::move(breakpoints)), sigma_(sigma) {
    if (!(sigma_ > 0.0) || !std::isfinite(sigma_))
        throw ValidationError("market: sigma must be finite and > 0");
    if (breakpoints_.empty()) throw ValidationError("market: lambda breakpoints missing");
    if (breakpoints_.front().first != 0.0)
        throw ValidationError("market: first lambda breakpoint must start at t = 0");
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        if (!std::isfinite(breakpoints_[i].first) || !std::isfinite(breakpoints_[i].second))
            throw ValidationError("market: lambda breakpoints must be finite");
        if (i > 0 && !(breakpoints_[i].first > breakpoints_[i - 1].first))
            throw ValidationError("market: lambda breakpoints must be strictly increasing");
        lambda_max_ = std::max(lambda_max_, std::abs(breakpoints_[i].second));
    }
}

double MarketModel::lambda(double t) const {
    double v = breakpoints_.front().second;
    for (const auto& [from, val] : breakpoints_) {
        if (t >= from) v = val;
        else break;
    }
    return v;
}

double MarketModel::drift() const { return breakpoints_.front().second * sigma_; }

double MarketModel::a_process(double t) const {
    if (!(t >= 0.0)) throw ValidationError("a_process: t must be >= 0");
    double acc = 0.0;
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        const double from = breakpoints_[i].first;
        if (t <= from) break;
        const double to = (i + 1 < breakpoints_.size()) ? std::min(breakpoints_[i + 1].first, t) : t;
        const double lam = breakpoints_[i].second;
        acc += lam * lam * (to - from);
    }
    return acc;
}

bool MarketModel::a_diverges() const { return breakpoints_.back().second != 0.0; }

double a_process(const MarketModel& mkt, double t) { return mkt.a_process(t); }

WealthPaths simulate_optimal(const Measure& m, const MarketModel& mkt, double x, double horizon,
                             int n_steps, int n_paths, std::uint64_t seed) {
    if (!(x > 0.0)) throw ValidationError("simulate_optimal: x must be > 0");
    if (!(horizon > 0.0)) throw ValidationError("simulate_optimal: horizon must be > 0");
    if (n_steps < 1) throw ValidationError("simulate_optimal: n_steps must be >= 1");
    if (n_paths < 1) throw ValidationError("simulate_optimal: n_paths must be >= 1");

    WealthPaths out;
    out.n_paths = n_paths;
    out.times.resize(n_steps + 1);
    out.a_t.resize(n_steps + 1);
    for (int k = 0; k <= n_steps; ++k) {
        out.times[k] = horizon * k / n_steps;
        out.a_t[k] = mkt.a_process(out.times[k]);
    }
    const std::size_t stride = out.times.size();
    out.x_star.resize(static_cast<std::size_t>(n_paths) * stride);
    out.pi_star.resize(out.x_star.size());
    out.m_t.resize(out.x_star.size());

    const double z0 = h_inverse(m, x, 0.0).z;
    for (int p = 0; p < n_paths; ++p) {
        double M = 0.0;
        for (int k = 0; k <= n_steps; ++k) {
            if (k > 0) {
                const double dA = out.a_t[k] - out.a_t[k - 1];
                if (dA > 0.0)
                    M += std::sqrt(dA) * Philox4x32::normal(seed, static_cast<std::uint64_t>(p),
                                                            static_cast<std::uint64_t>(k));
            }
            const double A = out.a_t[k];
            const double z = z0 + A + M;
            const std::size_t idx = static_cast<std::size_t>(p) * stride + k;
            out.m_t[idx] = M;
            out.x_star[idx] = std::exp(m.log_moment(z, A, 0));
            out.pi_star[idx] =
                mkt.lambda(out.times[k]) / mkt.sigma() * std::exp(m.log_moment(z, A, 1));
        }
    }
    return out;
}

double wealth_cdf(const Measure& m, const MarketModel& mkt, double x, double t, double y) {
    if (!(x > 0.0)) throw ValidationError("wealth_cdf: x must be > 0");
    if (!(y > 0.0)) throw ValidationError("wealth_cdf: y must be > 0");
    if (!(t > 0.0)) throw ValidationError("wealth_cdf: t must be > 0");
    const double A = mkt.a_process(t);
    if (A == 0.0) return y >= x ? 1.0 : 0.0; // degenerate: nothing evolved
    const double z0 = h_inverse(m, x, 0.0).z;
    const double zy = h_inverse(m, y, A).z;
    return norm_cdf((zy - z0 - A) / std::sqrt(A));
}

namespace {

MonteCarloCheck summarize(const std::vector<double>& samples, double deterministic_shift) {
    MonteCarloCheck res;
    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= n;
    double var = 0.0;
    for (double s : samples) var += (s - mean) * (s - mean);
    var /= (n - 1.0);
    res.estimate = mean + deterministic_shift;
    res.std_error = std::sqrt(var / n);
    res.reference = 0.0;
    return res;
}

} // namespace

MonteCarloCheck martingale_check(const Measure& m, const MarketModel& mkt, double x, double t,
                                 int n_paths, std::uint64_t seed) {
    if (n_paths < 1000) throw ValidationError("martingale_check: n_paths must be >= 1000");
    if (!(t > 0.0)) throw ValidationError("martingale_check: t must be > 0");
    const double A = mkt.a_process(t);
    const double z0 = h_inverse(m, x, 0.0).z;
    const double z_ref = (A > 0.0) ? h_inverse(m, x, A).z : z0;
    const double sd = std::sqrt(A);

    std::vector<double> samples(static_cast<std::size_t>(n_paths));
    for (int p = 0; p < n_paths; ++p) {
        const double M = sd * Philox4x32::normal(seed, static_cast<std::uint64_t>(p), 1);
        // u(X*_T, A_T) - u(x, A_T); the inverse of X*_T is z0 + A + M by construction
        samples[static_cast<std::size_t>(p)] = utility_diff_from_z(m, z_ref, z0 + A + M, A);
    }
    // Deterministic drift of the reference point closes the loop back to u(x, 0).
    const double shift = utility_time_shift(m, x, 0.0, A);
    return summarize(samples, shift);
}

MonteCarloCheck supermartingale_check(const Measure& m, const MarketModel& mkt, double x,
                                      double t, double kappa, int n_paths, int n_steps,
                                      std::uint64_t seed) {
    if (n_paths < 1000) throw ValidationError("supermartingale_check: n_paths must be >= 1000");
    if (n_steps < 1) throw ValidationError("supermartingale_check: n_steps must be >= 1");
    if (!(t > 0.0)) throw ValidationError("supermartingale_check: t must be > 0");
    constexpr double kFloor = 1e-12;
    const double A = mkt.a_process(t);
    const double dt = t / n_steps;
    const double z_ref = (A > 0.0) ? h_inverse(m, x, A).z : h_inverse(m, x, 0.0).z;
    const double sqdt = std::sqrt(dt);

    int floored = 0;
    std::vector<double> samples(static_cast<std::size_t>(n_paths));
    InverseOptions opts;
    for (int p = 0; p < n_paths; ++p) {
        double X = x;
        bool hit = false;
        for (int k = 0; k < n_steps; ++k) {
            const double tk = k * dt;
            const double lam = mkt.lambda(tk);
            const double dW = sqdt * Philox4x32::normal(seed, static_cast<std::uint64_t>(p),
                                                        static_cast<std::uint64_t>(k + 1));
            X += mkt.sigma() * kappa * X * (lam * dt + dW);
            if (X < kFloor) {
                X = kFloor;
                hit = true;
            }
        }
        if (hit) ++floored;
        const InverseEval inv = h_inverse(m, X, A, opts);
        opts.has_hint = true;
        opts.z_hint = inv.z;
        samples[static_cast<std::size_t>(p)] = utility_diff_from_z(m, z_ref, inv.z, A);
    }
    const double shift = utility_time_shift(m, x, 0.0, A);
    MonteCarloCheck res = summarize(samples, shift);
    res.floored_paths = floored;
    return res;
}

std::string paths_to_csv(const WealthPaths& paths) {
    std::string out = "time,path_id,x_star,pi_star\n";
    char buf[128];
    for (int p = 0; p < paths.n_paths; ++p) {
        for (std::size_t k = 0; k < paths.times.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%.12g,%d,%.12g,%.12g\n", paths.times[k], p,
                          paths.at(paths.x_star, p, k), paths.at(paths.pi_star, p, k));
            out += buf;
        }
    }
    return out;
}

} // namespace fpc
