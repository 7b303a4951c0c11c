#include "fpc/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fpc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
    throw ValidationError("config: " + path + ": " + why);
}

double need_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

int need_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

std::vector<double> need_number_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) fail(path + "[" + std::to_string(i) + "]", "expected a number");
        v.push_back(j[i].get<double>());
    }
    return v;
}

Measure parse_measure(const json& j) {
    if (!j.is_object()) fail("measure", "expected an object");
    if (!j.contains("type") || !j["type"].is_string()) fail("measure.type", "expected a string");
    const std::string type = j["type"].get<std::string>();
    if (type == "dirac") {
        if (!j.contains("points")) fail("measure.points", "missing");
        if (!j.contains("weights")) fail("measure.weights", "missing");
        return make_dirac_mixture(need_number_array(j["points"], "measure.points"),
                                  need_number_array(j["weights"], "measure.weights"));
    }
    if (type == "lebesgue") {
        if (!j.contains("a")) fail("measure.a", "missing");
        if (!j.contains("b")) fail("measure.b", "missing");
        return make_lebesgue(need_number(j["a"], "measure.a"), need_number(j["b"], "measure.b"));
    }
    if (type == "density") {
        if (!j.contains("a")) fail("measure.a", "missing");
        if (!j.contains("b")) fail("measure.b", "missing");
        if (!j.contains("values")) fail("measure.values", "missing");
        int panels = 64, order = 16;
        if (j.contains("panels")) panels = need_int(j["panels"], "measure.panels");
        if (j.contains("order")) order = need_int(j["order"], "measure.order");
        return make_tabulated(need_number(j["a"], "measure.a"), need_number(j["b"], "measure.b"),
                              need_number_array(j["values"], "measure.values"), panels, order);
    }
    fail("measure.type", "unknown type '" + type + "' (expected dirac|lebesgue|density)");
}

MarketModel parse_market(const json& j) {
    if (!j.is_object()) fail("market", "expected an object");
    if (!j.contains("sigma")) fail("market.sigma", "missing");
    const double sigma = need_number(j["sigma"], "market.sigma");
    if (!j.contains("lambda")) fail("market.lambda", "missing");
    std::vector<std::pair<double, double>> bp;
    const json& jl = j["lambda"];
    if (jl.is_number()) {
        bp.emplace_back(0.0, jl.get<double>());
    } else if (jl.is_array()) {
        for (std::size_t i = 0; i < jl.size(); ++i) {
            const std::string p = "market.lambda[" + std::to_string(i) + "]";
            if (!jl[i].is_array() || jl[i].size() != 2) fail(p, "expected a [t_from, value] pair");
            bp.emplace_back(need_number(jl[i][0], p + "[0]"), need_number(jl[i][1], p + "[1]"));
        }
    } else {
        fail("market.lambda", "expected a number or an array of [t_from, value] pairs");
    }
    return MarketModel(std::move(bp), sigma);
}

GridSpec parse_grid(const json& j, const std::string& path, GridSpec defaults) {
    if (!j.is_object()) fail(path, "expected an object");
    GridSpec g = defaults;
    if (j.contains("min")) g.min = need_number(j["min"], path + ".min");
    if (j.contains("max")) g.max = need_number(j["max"], path + ".max");
    if (j.contains("points")) g.points = need_int(j["points"], path + ".points");
    if (!(g.min > 0.0) || !(g.max > g.min) || g.points < 2)
        fail(path, "need 0 < min < max and points >= 2");
    return g;
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("config: top level must be an object");
    if (!j.contains("measure")) throw ValidationError("config: measure: missing");

    RunConfig cfg{.measure = parse_measure(j["measure"]),
                  .market = std::nullopt,
                  .temporal = {1.0, 1e4, 41},
                  .spatial = {1.0, 1e8, 41},
                  .simulation = {},
                  .classical_theta = 0.5,
                  .output_dir = ".",
                  .rtol = 1e-12};
    if (j.contains("market")) cfg.market = parse_market(j["market"]);
    if (j.contains("grids")) {
        const json& g = j["grids"];
        if (!g.is_object()) throw ValidationError("config: grids: expected an object");
        if (g.contains("temporal")) cfg.temporal = parse_grid(g["temporal"], "grids.temporal", cfg.temporal);
        if (g.contains("spatial")) cfg.spatial = parse_grid(g["spatial"], "grids.spatial", cfg.spatial);
    }
    if (j.contains("simulation")) {
        const json& s = j["simulation"];
        if (!s.is_object()) throw ValidationError("config: simulation: expected an object");
        if (s.contains("x0")) cfg.simulation.x0 = need_number(s["x0"], "simulation.x0");
        if (s.contains("horizon"))
            cfg.simulation.horizon = need_number(s["horizon"], "simulation.horizon");
        if (s.contains("steps")) cfg.simulation.steps = need_int(s["steps"], "simulation.steps");
        if (s.contains("paths")) cfg.simulation.paths = need_int(s["paths"], "simulation.paths");
        if (s.contains("seed")) {
            if (!s["seed"].is_number_integer()) fail("simulation.seed", "expected an integer");
            cfg.simulation.seed = s["seed"].get<std::uint64_t>();
        }
        if (!(cfg.simulation.x0 > 0.0)) fail("simulation.x0", "must be > 0");
        if (!(cfg.simulation.horizon > 0.0)) fail("simulation.horizon", "must be > 0");
        if (cfg.simulation.steps < 1) fail("simulation.steps", "must be >= 1");
        if (cfg.simulation.paths < 1) fail("simulation.paths", "must be >= 1");
    }
    if (j.contains("classical")) {
        const json& c = j["classical"];
        if (!c.is_object()) throw ValidationError("config: classical: expected an object");
        if (c.contains("theta")) cfg.classical_theta = need_number(c["theta"], "classical.theta");
    }
    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string()) fail("output_dir", "expected a string");
        cfg.output_dir = j["output_dir"].get<std::string>();
    }
    if (j.contains("rtol")) {
        cfg.rtol = need_number(j["rtol"], "rtol");
        if (!(cfg.rtol > 0.0 && cfg.rtol < 1e-2)) fail("rtol", "must lie in (0, 1e-2)");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("config: cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string example_config(const std::string& name) {
    json measure;
    double theta = 0.5;
    if (name == "single-dirac") {
        measure = {{"type", "dirac"}, {"points", {2.0}}, {"weights", {1.0}}};
    } else if (name == "two-dirac" || name == "classical") {
        measure = {{"type", "dirac"}, {"points", {2.0, 4.0}}, {"weights", {1.0, 1.0}}};
    } else if (name == "lebesgue") {
        measure = {{"type", "lebesgue"}, {"a", 1.0}, {"b", 2.0}};
    } else if (name == "lebesgue-zero-a") {
        measure = {{"type", "lebesgue"}, {"a", 0.0}, {"b", 2.0}};
    } else {
        throw ValidationError("example: unknown name '" + name +
                              "' (expected single-dirac|two-dirac|lebesgue|lebesgue-zero-a|classical)");
    }
    nlohmann::ordered_json cfg;
    cfg["measure"] = measure;
    cfg["market"] = {{"lambda", 0.25}, {"sigma", 0.2}};
    cfg["grids"] = {{"temporal", {{"min", 1.0}, {"max", 1e4}, {"points", 41}}},
                    {"spatial", {{"min", 1.0}, {"max", 1e8}, {"points", 41}}}};
    cfg["simulation"] = {{"x0", 1.0}, {"horizon", 1.0}, {"steps", 100},
                         {"paths", 100000}, {"seed", 12345}};
    cfg["classical"] = {{"theta", theta}};
    cfg["output_dir"] = ".";
    return cfg.dump(2) + "\n";
}

} // namespace fpc
