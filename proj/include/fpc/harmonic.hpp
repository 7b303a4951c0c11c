#pragma once

#include "fpc/measure.hpp"

namespace fpc {

// h and its derivatives at one point. h_t = -h_zz/2 holds by construction,
// so the heat equation residual of these fields is identically zero; the
// finite-difference diagnostic below checks it through h values alone.
struct HarmonicEval {
    double z = 0.0;
    double t = 0.0;
    double h = 0.0;
    double h_z = 0.0;
    double h_zz = 0.0;
    double h_zzz = 0.0;
    double h_t = 0.0;
};

struct InverseEval {
    double x = 0.0;
    double t = 0.0;
    double z = 0.0;   // h^{(-1)}(x, t)
    double z_t = 0.0; // time derivative of the spatial inverse, in [a/2, b/2]
};

struct InverseOptions {
    double rtol = 1e-12;       // on |h(z,t) - x| / x
    bool has_hint = false;     // warm start for scans
    double z_hint = 0.0;
};

HarmonicEval h_eval(const Measure& m, double z, double t);

// log h(z,t); safe at any magnitude.
double log_h(const Measure& m, double z, double t);

InverseEval h_inverse(const Measure& m, double x, double t, const InverseOptions& opts = {});

// Finite-difference estimate of h_t + h_zz/2 built only from h values.
// Steps default to 1e-4 * max(1, |z|, t) when passed as <= 0.
double heat_residual(const Measure& m, double z, double t, double dz = 0.0, double dt = 0.0);

} // namespace fpc
