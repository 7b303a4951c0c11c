#pragma once

#include <variant>
#include <vector>

#include "fpc/errors.hpp"
#include "fpc/quadrature.hpp"

namespace fpc {

// Support data of a measure, plus the exponent it induces on the criterion.
struct SupportInfo {
    double a = 0.0;              // left endpoint of the support
    bool a_is_open_zero = false; // the "a = 0+" case: endpoint 0 excluded
    double b = 0.0;              // right endpoint, always finite here
    double mass_at_b = 0.0;      // atom weight at b (0 for continuous parts)
    double gamma = 0.0;          // 1 - 1/b
    double total_mass = 0.0;
};

struct DiracMixture {
    std::vector<double> points;
    std::vector<double> weights;
    std::vector<double> log_weights;
};

struct LebesgueSegment {
    double a = 0.0;
    double b = 0.0;
};

struct TabulatedDensity {
    double a = 0.0;
    double b = 0.0;
    std::vector<double> values; // samples on a uniform grid over [a, b]
    int panels = 64;
    int order = 16;
    GaussRule rule; // baked at construction so evaluation stays lock-free
};

// A positive finite Borel measure on (0, inf) with bounded support. The
// exponential moments  integral y^k e^{yz - y^2 t/2} mu(dy)  are evaluated in
// log space so turnpike scans (t up to 1e4, z in the thousands) never leave
// the representable range.
class Measure {
public:
    using Body = std::variant<DiracMixture, LebesgueSegment, TabulatedDensity>;

    enum class Kind { Dirac, Lebesgue, Tabulated };

    Kind kind() const;
    const SupportInfo& support() const { return info_; }
    const Body& body() const { return body_; }

    // log of integral_{[a,b]} y^k e^{yz - y^2 t/2} mu(dy); k in [0,4].
    double log_moment(double z, double t, int k) const;

    // Same, restricted to y >= lo (endpoint included).
    double log_moment_tail(double z, double t, int k, double lo) const;

    // mu([lo, hi]).
    double mass_between(double lo, double hi) const;

    friend Measure make_dirac_mixture(std::vector<double>, std::vector<double>);
    friend Measure make_lebesgue(double, double);
    friend Measure make_tabulated(double, double, std::vector<double>, int, int);

private:
    Body body_;
    SupportInfo info_;
};

Measure make_dirac_mixture(std::vector<double> points, std::vector<double> weights);
Measure make_lebesgue(double a, double b);
Measure make_tabulated(double a, double b, std::vector<double> values, int panels = 64,
                       int order = 16);

SupportInfo support(const Measure& m);

// integral y^k e^{yz - y^2 t/2} mu(dy) in linear space; throws RangeError when
// the magnitude of the result's log exceeds the representable range.
double exp_moment(const Measure& m, double z, double t, int k);

// Log-space sibling, never throws on magnitude.
double log_exp_moment(const Measure& m, double z, double t, int k);

} // namespace fpc
