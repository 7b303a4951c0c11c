#pragma once

#include <functional>
#include <vector>

namespace fpc {

// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Computed by Newton iteration on P_n; deterministic to the last bit.
GaussRule gauss_legendre(int order);

// Adaptive Simpson on [a, b]; rtol is relative to the running estimate.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rtol = 1e-10, int max_depth = 48);

} // namespace fpc
