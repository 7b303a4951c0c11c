#pragma once

namespace fpc {

// Scaled complementary error function e^{x^2} erfc(x), valid for all finite x.
// Never overflows for x >= 0; for x < -26.6 the result overflows like 2 e^{x^2}.
double erfcx(double x);

// Standard normal CDF and its inverse. The inverse is accurate to ~1e-15
// relative over (0,1) (rational approximation plus one Halley refinement).
double norm_cdf(double x);
double inv_norm_cdf(double u);

// e^p - e^q without catastrophic cancellation; result carries the sign of p - q.
double diff_exp(double p, double q);

// log(e^p + e^q)
double logaddexp(double p, double q);

} // namespace fpc
