#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpc/classical.hpp"
#include "fpc/market.hpp"
#include "fpc/measure.hpp"

namespace fpc {

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int points = 0;
};

struct SimulationSpec {
    double x0 = 1.0;
    double horizon = 1.0;
    int steps = 100;
    int paths = 100000;
    std::uint64_t seed = 12345;
};

// Parsed run configuration; every block validates through its owning module
// before any computation starts.
struct RunConfig {
    Measure measure;
    std::optional<MarketModel> market;
    GridSpec temporal{1.0, 1e4, 41};
    GridSpec spatial{1.0, 1e8, 41};
    SimulationSpec simulation;
    double classical_theta = 0.5;
    std::string output_dir = ".";
    double rtol = 1e-12;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

// Ready-made configs reproducing the worked examples; names: single-dirac,
// two-dirac, lebesgue, lebesgue-zero-a, classical.
std::string example_config(const std::string& name);

} // namespace fpc
