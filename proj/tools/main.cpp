// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Every subcommand writes machine-readable files
// (CSV, PGM, JSON) into --out plus a run_meta.json sidecar; data files are
// byte-identical across re-runs with the same inputs and seed.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rissim/config.hpp"
#include "rissim/rissim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunRecorder {
    fs::path out_dir;
    std::vector<std::string> outputs;

    fs::path emit(const std::string& name, const std::string& bytes) {
        fs::create_directories(out_dir);
        const fs::path p = out_dir / name;
        rissim::io::write_file(p, bytes);
        outputs.push_back(name);
        return p;
    }

    void finish(const std::string& command) {
        fs::create_directories(out_dir);
        json meta;
        meta["command"] = command;
        meta["iso_timestamp"] = iso_now();
        meta["outputs"] = outputs;
        rissim::io::write_file(out_dir / "run_meta.json", meta.dump(2) + "\n");
    }

    static std::string iso_now() {
        char buf[32];
        const std::time_t t = std::time(nullptr);
        std::tm tm{};
        gmtime_r(&t, &tm);
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
    }
};

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i)
            s += ' ';
        s += argv[i];
    }
    return s;
}

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
    return g;
}

// ---------------------------------------------------------------- cases ---

int run_cases(RunRecorder& rec, const std::string& only_case) {
    auto catalog = rissim::deployment_catalog();
    std::vector<rissim::DeploymentCase> selected;
    if (only_case.empty()) {
        selected.assign(catalog.begin(), catalog.end());
    } else {
        auto c = rissim::find_case(only_case);
        if (!c)
            throw rissim::ConfigError("unknown deployment case '" + only_case + "'");
        selected.push_back(*c);
    }

    std::string csv = "case,frequency_hz,d1_m,d2_m,n_elements,area_m2,"
                      "gain_rel_los_db,beam_diameter_m\n";
    std::printf("%-5s %-9s %-9s %-10s %-16s %-15s\n", "case", "freq_GHz",
                "d1+d2_m", "elements", "gain_rel_LoS_dB", "beam_diameter_m");
    for (const auto& c : selected) {
        const auto budget = rissim::evaluate_case(c);
        const double diam = rissim::half_power_beam_diameter_m(
            c.area_m2, c.wavelength_m(), c.d2_m);
        using rissim::io::format_double;
        csv += c.name + ',' + format_double(c.frequency_hz) + ',' +
               format_double(c.d1_m) + ',' + format_double(c.d2_m) + ',' +
               std::to_string(c.n_elements) + ',' + format_double(c.area_m2) + ',' +
               format_double(budget.gain_relative_to_los_db) + ',' +
               format_double(diam) + '\n';
        std::printf("%-5s %-9.3g %.0f+%-6.0f %-10d %-16.2f %-15.3f\n", c.name.c_str(),
                    c.frequency_hz / 1e9, c.d1_m, c.d2_m, c.n_elements,
                    budget.gain_relative_to_los_db, diam);
    }
    rec.emit("cases.csv", csv);
    return 0;
}

// --------------------------------------------------------------- sweeps ---

int run_sweeps(RunRecorder& rec, const std::string& kind, double freq_hz,
               double split_ratio, const std::string& case_name) {
    const double lambda = rissim::speed_of_light_m_s / freq_hz;
    if (kind == "fspl") {
        const auto grid = log_grid(100.0 * lambda, 1e5 * lambda, 61);
        const auto mid = rissim::sweep_fspl(grid, 0.5, lambda);
        const auto off = rissim::sweep_fspl(grid, split_ratio, lambda);
        rissim::io::Table t;
        t.columns = {"total_distance_m", "distance_over_lambda", "single_hop_db",
                     "two_hop_mid_db",
                     "two_hop_split_" + rissim::io::format_double(split_ratio) + "_db"};
        for (std::size_t i = 0; i < mid.rows.size(); ++i)
            t.rows.push_back({mid.rows[i][0], mid.rows[i][1], mid.rows[i][2],
                              mid.rows[i][3], off.rows[i][3]});
        rec.emit("sweep_fspl.csv", rissim::io::to_csv(t));
    } else if (kind == "risgain") {
        std::vector<double> areas = log_grid(10.0, 1e5, 81);
        for (double& a : areas)
            a *= lambda * lambda;
        rec.emit("sweep_risgain.csv",
                 rissim::io::to_csv(rissim::sweep_ris_gain(areas, lambda)));
    } else if (kind == "beamwidth") {
        std::vector<double> areas = log_grid(10.0, 1e5, 81);
        for (double& a : areas)
            a *= lambda * lambda;
        const std::vector<double> dists = {20.0, 100.0, 500.0};
        rec.emit("sweep_beamwidth.csv",
                 rissim::io::to_csv(rissim::sweep_beamwidth(areas, lambda, dists)));
    } else if (kind == "neargain") {
        auto c = rissim::find_case(case_name.empty() ? "1L" : case_name);
        if (!c)
            throw rissim::ConfigError("unknown deployment case '" + case_name + "'");
        const double lam = c->wavelength_m();
        const auto grid = log_grid(10.0 * lam, 1e5 * lam, 41);
        rec.emit("sweep_neargain_" + c->name + ".csv",
                 rissim::io::to_csv(rissim::near_gain_sweep(*c, grid)));
    } else {
        throw rissim::ConfigError("unknown sweep kind '" + kind + "'");
    }
    return 0;
}

// ------------------------------------------------------------- coverage ---

rissim::NodeModel model_by_name(const std::string& name) {
    if (name == "reflector")
        return rissim::ReflectorModel{};
    if (name == "fixedris")
        return rissim::FixedRisModel{};
    if (name == "ris")
        return rissim::AdaptiveRisModel{};
    if (name == "ncr")
        return rissim::NcrModel{};
    throw rissim::ConfigError("unknown node model '" + name + "'");
}

std::string model_name(const rissim::NodeModel& m) {
    if (std::holds_alternative<rissim::ReflectorModel>(m))
        return "reflector";
    if (std::holds_alternative<rissim::FixedRisModel>(m))
        return "fixedris";
    if (std::holds_alternative<rissim::AdaptiveRisModel>(m))
        return "ris";
    return "ncr";
}

struct CoverageOptions {
    std::string scenario_path;
    std::string model;
    bool all_models = false;
    std::optional<double> freq_hz;
    std::optional<std::uint64_t> seed;
    std::vector<double> grid; // x0,x1,y0,y1,res
    double pgm_max = 20.0;
};

int run_coverage(RunRecorder& rec, const CoverageOptions& opt) {
    rissim::Scenario sc = opt.scenario_path.empty()
                              ? rissim::Scenario{}
                              : rissim::load_scenario(opt.scenario_path);
    if (opt.freq_hz) {
        double bw = rissim::paired_bandwidth_hz(*opt.freq_hz);
        if (bw <= 0.0)
            bw = sc.radio.bandwidth_hz;
        sc.radio = rissim::make_radio_config(*opt.freq_hz, bw, sc.radio.noise_figure_db,
                                             sc.radio.bs_tx_power_dbm);
    }
    if (opt.seed)
        sc.seed = *opt.seed;
    if (!opt.grid.empty()) {
        if (opt.grid.size() != 5)
            throw rissim::ConfigError("--grid expects X0,X1,Y0,Y1,RES");
        sc.grid = {opt.grid[0], opt.grid[1], opt.grid[2], opt.grid[3], opt.grid[4]};
        if (!(sc.grid.resolution_m > 0.0))
            throw rissim::ConfigError("--grid: resolution must be positive");
    }
    if (!opt.model.empty())
        sc.node_model = model_by_name(opt.model);

    std::vector<rissim::NodeModel> models;
    if (opt.all_models)
        models = {rissim::ReflectorModel{}, rissim::FixedRisModel{},
                  rissim::AdaptiveRisModel{}, rissim::NcrModel{}};
    else
        models = {sc.node_model};

    for (const auto& m : models) {
        rissim::Scenario run = sc;
        run.node_model = m;
        const rissim::SEMap map = rissim::sweep_grid(run);
        const rissim::Cdf cdf = rissim::cdf_of(map);
        const std::string tag = model_name(m);
        rec.emit("coverage_" + tag + "_se.csv",
                 rissim::io::to_csv(rissim::semap_table(map)));
        rec.emit("coverage_" + tag + "_se.pgm",
                 rissim::io::to_pgm(map.grid.nx(), map.grid.ny(),
                                    rissim::semap_pixels(map, opt.pgm_max)));
        rec.emit("coverage_" + tag + "_cdf.csv",
                 rissim::io::to_csv(rissim::cdf_table(cdf)));
        std::printf("%-10s mean SE %.4f bps/Hz, median %.4f, cells %zu\n", tag.c_str(),
                    cdf.mean, cdf.quantile(0.5), cdf.samples.size());
    }
    return 0;
}

// ------------------------------------------------------------- overhead ---

int run_overhead(RunRecorder& rec, const std::string& config_path) {
    const rissim::OverheadConfig cfg = rissim::load_overhead_config(config_path);
    const rissim::SsbDemand d = rissim::ssb_demand(cfg);
    json verdict;
    verdict["required"] = d.required;
    verdict["budget"] = cfg.ssb_budget;
    verdict["feasible"] = d.feasible;
    verdict["utilization"] = d.utilization;
    const std::string line = verdict.dump();
    std::printf("%s\n", line.c_str());
    rec.emit("overhead_verdict.json", line + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rissim: reflecting-panel and repeater link budget and "
                 "coverage simulator"};
    app.require_subcommand(1);

    std::string out_dir = ".";
    app.add_option("--out", out_dir, "output directory")->capture_default_str();

    auto* cases = app.add_subcommand("cases", "deployment-case comparison table");
    std::string only_case;
    cases->add_option("--case", only_case, "restrict to one case (1S, 1L, 2L, 3S)");

    auto* sweeps = app.add_subcommand("sweeps", "curve data: path loss, panel gain, "
                                                "beamwidth, near-field gain");
    std::string kind;
    double sweep_freq = 30e9, sweep_ratio = 0.9;
    std::string sweep_case;
    sweeps->add_option("--kind", kind, "fspl | risgain | beamwidth | neargain")
        ->required();
    sweeps->add_option("--freq", sweep_freq, "carrier frequency, Hz")
        ->capture_default_str();
    sweeps->add_option("--ratio", sweep_ratio, "off-center split ratio for fspl")
        ->capture_default_str();
    sweeps->add_option("--case", sweep_case, "deployment case for neargain");

    auto* coverage = app.add_subcommand("coverage", "spectral-efficiency maps and CDFs");
    CoverageOptions cov;
    coverage->add_option("--scenario", cov.scenario_path, "scenario JSON file");
    coverage->add_option("--model", cov.model, "reflector | fixedris | ris | ncr");
    coverage->add_flag("--all-models", cov.all_models, "run the four-way comparison");
    double cov_freq = 0.0;
    coverage->add_option("--freq", cov_freq, "carrier frequency override, Hz");
    std::int64_t cov_seed = -1;
    coverage->add_option("--seed", cov_seed, "seed override");
    coverage->add_option("--grid", cov.grid, "X0,X1,Y0,Y1,RES")->delimiter(',');
    coverage->add_option("--pgm-max", cov.pgm_max, "SE mapped to full white in PGM")
        ->capture_default_str();

    auto* overhead = app.add_subcommand("overhead", "SSB budget verdict");
    std::string overhead_config;
    overhead->add_option("--config", overhead_config, "overhead config JSON")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    RunRecorder rec{fs::path(out_dir), {}};
    try {
        int rc = 0;
        if (*cases)
            rc = run_cases(rec, only_case);
        else if (*sweeps)
            rc = run_sweeps(rec, kind, sweep_freq, sweep_ratio, sweep_case);
        else if (*coverage) {
            if (cov_freq > 0.0)
                cov.freq_hz = cov_freq;
            if (cov_seed >= 0)
                cov.seed = static_cast<std::uint64_t>(cov_seed);
            rc = run_coverage(rec, cov);
        } else if (*overhead)
            rc = run_overhead(rec, overhead_config);
        rec.finish(join_args(argc, argv));
        return rc;
    } catch (const rissim::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const rissim::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
