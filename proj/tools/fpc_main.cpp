#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpc/asymptotics.hpp"
#include "fpc/classical.hpp"
#include "fpc/config.hpp"
#include "fpc/harmonic.hpp"
#include "fpc/market.hpp"
#include "fpc/performance.hpp"

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw fpc::ValidationError("cannot write file '" + path.string() + "'");
    out << content;
}

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double rtol = 0.0;
    bool rtol_set = false;
};

fpc::RunConfig load(const CommonArgs& args) {
    if (args.config_path.empty())
        throw fpc::ValidationError("missing --config PATH (generate one with 'fpc example')");
    fpc::RunConfig cfg = fpc::load_config(args.config_path);
    if (args.seed_set) cfg.simulation.seed = args.seed;
    if (args.rtol_set) cfg.rtol = args.rtol;
    if (!args.out_dir.empty()) cfg.output_dir = args.out_dir;
    return cfg;
}

void print_eval(const fpc::RunConfig& cfg, double z, double t) {
    const fpc::HarmonicEval he = fpc::h_eval(cfg.measure, z, t);
    std::cout << "h(z,t)      = " << fmt(he.h) << "\n"
              << "h_z         = " << fmt(he.h_z) << "\n"
              << "h_zz        = " << fmt(he.h_zz) << "\n"
              << "h_zzz       = " << fmt(he.h_zzz) << "\n"
              << "h_t         = " << fmt(he.h_t) << "\n";
    const fpc::CriterionPoint cp = fpc::criterion_point(cfg.measure, he.h, t);
    std::cout << "x = h(z,t)  = " << fmt(cp.x) << "\n"
              << "u_x         = " << fmt(cp.u_x) << "  (log " << fmt(cp.log_u_x) << ")\n"
              << "r           = " << fmt(cp.r) << "\n"
              << "r_x         = " << fmt(cp.r_x) << "\n"
              << "prudence    = " << fmt(cp.p) << "\n";
}

void print_invert(const fpc::RunConfig& cfg, double x, double t) {
    fpc::InverseOptions opts;
    opts.rtol = cfg.rtol;
    const fpc::InverseEval inv = fpc::h_inverse(cfg.measure, x, t, opts);
    const double back = std::exp(fpc::log_h(cfg.measure, inv.z, t));
    std::cout << "z = h^(-1)(x,t) = " << fmt(inv.z) << "\n"
              << "z_t             = " << fmt(inv.z_t) << "\n"
              << "round trip |h(z,t)-x|/x = " << fmt(std::abs(back - x) / x) << "\n";
}

int run_turnpike(const fpc::RunConfig& cfg, const std::string& axis, double fixed,
                 bool fixed_set) {
    const fpc::MeasureClassification cls = fpc::classify(cfg.measure);
    if (axis == "temporal") {
        const double x0 = fixed_set ? fixed : 1.0;
        const auto grid = fpc::geometric_grid(cfg.temporal.min, cfg.temporal.max,
                                              cfg.temporal.points);
        const fpc::TurnpikeSeries s = fpc::scan_temporal(cfg.measure, x0, grid);
        write_file(fs::path(cfg.output_dir) / "turnpike_temporal.csv", fpc::series_to_csv(s));
        std::cout << "temporal turnpike x0=" << fmt(x0) << ": predicted "
                  << fmt(cls.temporal_limit) << ", achieved " << fmt(s.rows.back().ratio)
                  << " at t=" << fmt(s.rows.back().grid) << "\n";
        if (!s.diagnostics_ok) std::cout << "diagnostics: " << s.diagnostics << "\n";
        std::cout << "wrote " << (fs::path(cfg.output_dir) / "turnpike_temporal.csv").string()
                  << "\n";
        return 0;
    }
    if (axis == "spatial") {
        const double t0 = fixed_set ? fixed : 1.0;
        const auto grid = fpc::geometric_grid(cfg.spatial.min, cfg.spatial.max,
                                              cfg.spatial.points);
        const fpc::TurnpikeSeries s = fpc::scan_spatial(cfg.measure, t0, grid);
        write_file(fs::path(cfg.output_dir) / "turnpike_spatial.csv", fpc::series_to_csv(s));
        if (s.spatial_fails) {
            const double x_end = s.rows.back().grid;
            const double growth = s.rows.back().ratio / std::log(std::log(x_end));
            std::cout << "spatial turnpike fails (no mass at b); growth-law ratio "
                         "r/(x ln ln x) = "
                      << fmt(growth) << " vs (1-gamma)/t0 = "
                      << fmt((1.0 - fpc::support(cfg.measure).gamma) / (t0 > 0 ? t0 : 1.0))
                      << "\n";
        } else {
            std::cout << "spatial turnpike t0=" << fmt(t0) << ": predicted "
                      << fmt(*cls.spatial_limit) << ", achieved " << fmt(s.rows.back().ratio)
                      << " at x=" << fmt(s.rows.back().grid) << "\n";
        }
        std::cout << "wrote " << (fs::path(cfg.output_dir) / "turnpike_spatial.csv").string()
                  << "\n";
        return 0;
    }
    throw fpc::ValidationError("turnpike: axis must be 'temporal' or 'spatial'");
}

void print_expand(const fpc::RunConfig& cfg, double x, double t) {
    const fpc::SupportInfo si = fpc::support(cfg.measure);
    const fpc::InverseEval inv = fpc::h_inverse(cfg.measure, x, t);
    const double r = fpc::risk_tolerance(cfg.measure, x, t);
    std::cout << "numeric: h_inv = " << fmt(inv.z) << ", r = " << fmt(r) << "\n";
    if (cfg.measure.kind() == fpc::Measure::Kind::Dirac) {
        const auto e = fpc::dirac_expansion(cfg.measure, x, t);
        std::cout << "dirac expansion: h_inv_temporal = " << fmt(e.h_inv_temporal)
                  << ", h_inv_spatial = " << fmt(e.h_inv_spatial)
                  << ", r_temporal = " << fmt(e.r_temporal)
                  << ", r_spatial = " << fmt(e.r_spatial) << "\n";
    } else if (cfg.measure.kind() == fpc::Measure::Kind::Lebesgue) {
        const auto e = fpc::lebesgue_expansion(si.a, si.b, x, t);
        std::cout << "lebesgue expansion: h_inv_temporal = " << fmt(e.h_inv_temporal)
                  << ", h_inv_spatial = " << fmt(e.h_inv_spatial)
                  << ", r_spatial = " << fmt(e.r_spatial)
                  << ", h_inv/t (a=0+) = " << fmt(e.h_inv_temporal_zero_a) << "\n";
    } else {
        std::cout << "no closed-form expansion family for tabulated densities\n";
    }
}

int run_simulate(const fpc::RunConfig& cfg) {
    if (!cfg.market)
        throw fpc::ValidationError("simulate: config has no market block");
    const auto& sim = cfg.simulation;
    const fpc::MarketModel& mkt = *cfg.market;

    const int csv_paths = std::min(sim.paths, 100);
    const fpc::WealthPaths paths = fpc::simulate_optimal(cfg.measure, mkt, sim.x0, sim.horizon,
                                                         sim.steps, csv_paths, sim.seed);
    write_file(fs::path(cfg.output_dir) / "paths.csv", fpc::paths_to_csv(paths));

    const fpc::MonteCarloCheck opt = fpc::martingale_check(cfg.measure, mkt, sim.x0, sim.horizon,
                                                           sim.paths, sim.seed);
    const bool opt_pass = std::abs(opt.estimate - opt.reference) <= 3.0 * opt.std_error;

    const double b = fpc::support(cfg.measure).b;
    const double lam = mkt.lambda(0.0);
    const int euler_steps = std::max(sim.steps, static_cast<int>(1000.0 * sim.horizon));
    nlohmann::ordered_json out;
    out["optimal"] = {{"estimate", opt.estimate},
                      {"std_error", opt.std_error},
                      {"reference", opt.reference},
                      {"pass", opt_pass}};
    out["suboptimal"] = nlohmann::ordered_json::array();
    for (double mult : {0.5, 1.5}) {
        const double kappa = mult * b * lam / mkt.sigma();
        const fpc::MonteCarloCheck sub = fpc::supermartingale_check(
            cfg.measure, mkt, sim.x0, sim.horizon, kappa, sim.paths, euler_steps, sim.seed);
        const bool pass = sub.estimate <= sub.reference + 3.0 * sub.std_error;
        out["suboptimal"].push_back({{"kappa", kappa},
                                     {"estimate", sub.estimate},
                                     {"std_error", sub.std_error},
                                     {"reference", sub.reference},
                                     {"floored_paths", sub.floored_paths},
                                     {"pass", pass}});
    }
    write_file(fs::path(cfg.output_dir) / "martingale.json", out.dump(2) + "\n");

    std::cout << "optimal martingale check: estimate " << fmt(opt.estimate) << " +/- "
              << fmt(opt.std_error) << " vs reference " << fmt(opt.reference) << " -> "
              << (opt_pass ? "pass" : "FAIL") << "\n";
    for (const auto& sub : out["suboptimal"])
        std::cout << "suboptimal kappa=" << fmt(sub["kappa"].get<double>())
                  << ": estimate " << fmt(sub["estimate"].get<double>()) << " +/- "
                  << fmt(sub["std_error"].get<double>()) << " -> "
                  << (sub["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
    std::cout << "wrote " << (fs::path(cfg.output_dir) / "paths.csv").string() << " and "
              << (fs::path(cfg.output_dir) / "martingale.json").string() << "\n";
    return 0;
}

int run_classical(const fpc::RunConfig& cfg) {
    const double lam = cfg.market ? cfg.market->lambda(0.0) : 0.25;
    const fpc::ClassicalSpec spec(cfg.classical_theta, lam);
    const auto x_grid = fpc::geometric_grid(cfg.spatial.min, cfg.spatial.max, cfg.spatial.points);
    const auto tau_grid =
        fpc::geometric_grid(cfg.temporal.min, cfg.temporal.max, cfg.temporal.points);
    const fpc::ClassicalLimits lims = fpc::classical_limits(spec, x_grid, tau_grid);
    write_file(fs::path(cfg.output_dir) / "classical_spatial.csv",
               fpc::series_to_csv(lims.spatial));
    write_file(fs::path(cfg.output_dir) / "classical_temporal.csv",
               fpc::series_to_csv(lims.temporal));

    const double cs = lims.spatial.rows.back().ratio;
    const double ct = lims.temporal.rows.back().ratio;
    std::cout << "classical series ends: spatial " << fmt(cs) << ", temporal " << fmt(ct)
              << " (closed-form limit " << fmt(lims.limit) << ", coincident)\n";
    const fpc::MeasureClassification cls = fpc::classify(cfg.measure);
    const double fs_lim = cls.spatial_limit ? *cls.spatial_limit : 0.0;
    std::cout << "forward limits: spatial "
              << (cls.spatial_limit ? fmt(fs_lim) : std::string("fails")) << ", temporal "
              << fmt(cls.temporal_limit);
    if (cls.spatial_limit)
        std::cout << "; non-coincidence gap " << fmt(fs_lim - cls.temporal_limit);
    std::cout << "\n";
    std::cout << "wrote classical_spatial.csv and classical_temporal.csv in " << cfg.output_dir
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"forward performance criteria toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    CommonArgs common;
    app.add_option("--config", common.config_path, "JSON run configuration");
    app.add_option("--out", common.out_dir, "output directory (overrides config)");
    auto* seed_opt = app.add_option("--seed", common.seed, "RNG seed (overrides config)");
    auto* rtol_opt = app.add_option("--rtol", common.rtol, "inverse tolerance (overrides config)");

    double z = 0.0, t = 0.0, x = 1.0, fixed = 0.0;
    std::string axis, example_name;

    auto* cmd_eval = app.add_subcommand("eval", "evaluate h and the criterion at (z, t)");
    cmd_eval->add_option("--z", z)->required();
    cmd_eval->add_option("--t", t)->required();

    auto* cmd_invert = app.add_subcommand("invert", "spatial inverse of h at (x, t)");
    cmd_invert->add_option("--x", x)->required();
    cmd_invert->add_option("--t", t)->required();

    auto* cmd_turnpike = app.add_subcommand("turnpike", "run a turnpike scan, write CSV");
    cmd_turnpike->add_option("--axis", axis, "temporal|spatial")->required();
    auto* fixed_opt = cmd_turnpike->add_option("--fixed", fixed, "fixed x0 (temporal) or t0 (spatial)");

    auto* cmd_expand = app.add_subcommand("expand", "closed-form expansion predictions at (x, t)");
    cmd_expand->add_option("--x", x)->required();
    cmd_expand->add_option("--t", t)->required();

    auto* cmd_simulate = app.add_subcommand("simulate", "optimal wealth paths + martingale checks");

    auto* cmd_classical = app.add_subcommand("classical", "classical comparison series");

    auto* cmd_example = app.add_subcommand("example", "write a ready-made config");
    cmd_example->add_option("name", example_name, "single-dirac|two-dirac|lebesgue|lebesgue-zero-a|classical")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    common.seed_set = seed_opt->count() > 0;
    common.rtol_set = rtol_opt->count() > 0;

    try {
        if (cmd_example->parsed()) {
            const std::string text = fpc::example_config(example_name);
            const fs::path dir = common.out_dir.empty() ? fs::path(".") : fs::path(common.out_dir);
            const fs::path file = dir / (example_name + ".json");
            write_file(file, text);
            std::cout << "wrote " << file.string() << "\n";
            return 0;
        }
        const fpc::RunConfig cfg = load(common);
        if (cmd_eval->parsed()) {
            print_eval(cfg, z, t);
            return 0;
        }
        if (cmd_invert->parsed()) {
            print_invert(cfg, x, t);
            return 0;
        }
        if (cmd_turnpike->parsed()) return run_turnpike(cfg, axis, fixed, fixed_opt->count() > 0);
        if (cmd_expand->parsed()) {
            print_expand(cfg, x, t);
            return 0;
        }
        if (cmd_simulate->parsed()) return run_simulate(cfg);
        if (cmd_classical->parsed()) return run_classical(cfg);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const fpc::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fpc::RangeError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const fpc::ConvergenceError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
