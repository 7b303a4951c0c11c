#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fpc/measure.hpp"

namespace fpc {

enum class ScanAxis { Temporal, Spatial };

struct ScanRow {
    double grid = 0.0;     // t (temporal) or x (spatial)
    double ratio = 0.0;    // r / x at the scan point
    double delta = 0.0;    // temporal only; NaN otherwise
    double g_bound = 0.0;  // temporal only; NaN otherwise
    double prediction = 0.0; // closed-form expansion value; NaN when no family matches
    double residual = 0.0;   // |numeric - prediction|; NaN when no prediction
    double r_x = 0.0;        // spatial only; NaN otherwise
    double h_inv = 0.0;      // the inverse point used at this row
};

struct TurnpikeSeries {
    ScanAxis axis = ScanAxis::Temporal;
    double fixed = 0.0; // x0 (temporal) or t0 (spatial)
    std::vector<ScanRow> rows;
    std::string label;         // e.g. convergence target or failure note
    bool spatial_fails = false; // no mass at b: spatial turnpike does not hold
    bool diagnostics_ok = true; // Prop.-8-style inequality checks along the scan
    std::string diagnostics;
};

struct MeasureClassification {
    std::optional<double> spatial_limit; // nullopt when mass_at_b = 0
    double temporal_limit = 0.0;         // a (0 for the open-zero case)
    bool assumption1_holds = false;      // mass at b equal to 1
    bool assumption2_holds = true;       // finite right support (always here)
    double prudence_spatial = 0.0;       // 2 - gamma
    double prudence_temporal = 0.0;      // 1 + 1/a, or +inf when a = 0+
    std::string note;
};

struct DiracExpansion {
    double h_inv_temporal = 0.0;
    double h_inv_spatial = 0.0;
    double r_temporal = 0.0;
    double r_spatial = 0.0;
};

struct LebesgueExpansion {
    double h_inv_temporal = 0.0;       // requires a > 0; NaN otherwise
    double h_inv_spatial = 0.0;
    double r_spatial = 0.0;
    double h_inv_temporal_zero_a = 0.0; // prediction for h^{(-1)}/t; NaN when a > 0
};

MeasureClassification classify(const Measure& m);

// h^{(-1)}(x0, t)/t - a/2
double delta(const Measure& m, double x0, double t);

// The explicit convergence bound dominating r(x0,t) - a x0 for large t.
double g_bound(const Measure& m, double x0, double t);

TurnpikeSeries scan_temporal(const Measure& m, double x0, const std::vector<double>& t_grid);
TurnpikeSeries scan_spatial(const Measure& m, double t0, const std::vector<double>& x_grid);

// Principal branch of the Lambert W function on [-1/e, inf).
double lambert_w(double x);

DiracExpansion dirac_expansion(const Measure& m, double x, double t);
LebesgueExpansion lebesgue_expansion(double a, double b, double x, double t);

struct VariationRow {
    double k = 0.0;
    double x = 0.0;
    double ratio = 0.0;     // u0'(k x) / u0'(x)
    double reference = 0.0; // k^{gamma - 1}
    double residual = 0.0;
};

std::vector<VariationRow> regular_variation_check(const Measure& m,
                                                  const std::vector<double>& k_values,
                                                  const std::vector<double>& x_grid);

// Canonical CSV form: header grid,ratio,delta,g_bound,prediction,residual with
// empty fields where a column does not apply.
std::string series_to_csv(const TurnpikeSeries& s);

std::vector<double> geometric_grid(double lo, double hi, int points);

} // namespace fpc
