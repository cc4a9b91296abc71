// SPDX-License-Identifier: Apache-2.0
//
// JSON scenario and overhead-config loading. Parsing is strict: any key the
// schema does not know is rejected with an error naming its JSON path.

#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rissim/coverage.hpp"
#include "rissim/overhead.hpp"

namespace rissim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace config_detail {

using nlohmann::json;

inline void require_keys(const json& obj,
                         const std::string& path,
                         std::initializer_list<const char*> allowed) {
    if (!obj.is_object())
        throw ConfigError(path + ": expected a JSON object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) {
                known = true;
                break;
            }
        if (!known)
            throw ConfigError(path + ": unknown key '" + item.key() + "'");
    }
}

inline double number_at(const json& obj, const std::string& path, const char* key,
                        double fallback) {
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError(path + "." + key + ": expected a number");
    return v.get<double>();
}

inline int int_at(const json& obj, const std::string& path, const char* key, int fallback) {
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        throw ConfigError(path + "." + key + ": expected an integer");
    return v.get<int>();
}

inline bool bool_at(const json& obj, const std::string& path, const char* key, bool fallback) {
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean())
        throw ConfigError(path + "." + key + ": expected a boolean");
    return v.get<bool>();
}

inline Position3 position_at(const json& obj, const std::string& path, const char* key,
                             Position3 fallback) {
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    const std::string p = path + "." + key;
    require_keys(v, p, {"x", "y", "z"});
    return {number_at(v, p, "x", 0.0), number_at(v, p, "y", 0.0), number_at(v, p, "z", 0.0)};
}

inline json parse_file(const std::filesystem::path& file) {
    std::ifstream f(file);
    if (!f)
        throw ConfigError("cannot open config file: " + file.string());
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw ConfigError(file.string() + ": " + e.what());
    }
}

} // namespace config_detail

// Table row pairing of bandwidth to the two studied carriers.
inline double paired_bandwidth_hz(double frequency_hz) {
    if (std::abs(frequency_hz - 15e9) < 1.0)
        return 100e6;
    if (std::abs(frequency_hz - 28e9) < 1.0)
        return 400e6;
    return 0.0; // no known pairing
}

inline Scenario scenario_from_json(const nlohmann::json& j, const std::string& path = "$") {
    using namespace config_detail;
    require_keys(j, path,
                 {"radio", "bs", "node", "ue_height_m", "grid", "node_model",
                  "k_factor_db", "seed", "bs_antennas", "ris"});
    Scenario sc;

    if (j.contains("radio")) {
        const json& r = j.at("radio");
        const std::string p = path + ".radio";
        require_keys(r, p, {"frequency_hz", "bandwidth_hz", "noise_figure_db",
                            "bs_tx_power_dbm"});
        const double f = number_at(r, p, "frequency_hz", 15e9);
        double b = number_at(r, p, "bandwidth_hz", 0.0);
        if (b <= 0.0) {
            b = paired_bandwidth_hz(f);
            if (b <= 0.0)
                throw ConfigError(p + ".bandwidth_hz: required for frequencies "
                                      "without a table pairing");
        }
        sc.radio = make_radio_config(f, b, number_at(r, p, "noise_figure_db", 10.0),
                                     number_at(r, p, "bs_tx_power_dbm", 40.0));
    }
    sc.bs = position_at(j, path, "bs", sc.bs);
    sc.node = position_at(j, path, "node", sc.node);
    sc.ue_height_m = number_at(j, path, "ue_height_m", sc.ue_height_m);

    if (j.contains("grid")) {
        const json& g = j.at("grid");
        const std::string p = path + ".grid";
        require_keys(g, p, {"x0", "x1", "y0", "y1", "resolution_m"});
        sc.grid.x0 = number_at(g, p, "x0", sc.grid.x0);
        sc.grid.x1 = number_at(g, p, "x1", sc.grid.x1);
        sc.grid.y0 = number_at(g, p, "y0", sc.grid.y0);
        sc.grid.y1 = number_at(g, p, "y1", sc.grid.y1);
        sc.grid.resolution_m = number_at(g, p, "resolution_m", sc.grid.resolution_m);
        if (!(sc.grid.resolution_m > 0.0) || sc.grid.x1 < sc.grid.x0 || sc.grid.y1 < sc.grid.y0)
            throw ConfigError(p + ": degenerate grid extent");
    }

    sc.k_factor_db = number_at(j, path, "k_factor_db", sc.k_factor_db);
    if (j.contains("seed")) {
        const json& v = j.at("seed");
        if (!v.is_number_unsigned() && !v.is_number_integer())
            throw ConfigError(path + ".seed: expected an integer");
        sc.seed = v.get<std::uint64_t>();
    }
    sc.bs_antennas = int_at(j, path, "bs_antennas", sc.bs_antennas);

    if (j.contains("ris")) {
        const json& r = j.at("ris");
        const std::string p = path + ".ris";
        require_keys(r, p, {"nx", "ny", "insertion_loss_db", "phase_bits",
                            "phase_error_sigma_rad"});
        sc.ris_nx = int_at(r, p, "nx", sc.ris_nx);
        sc.ris_ny = int_at(r, p, "ny", sc.ris_ny);
        sc.ris_insertion_loss_db = number_at(r, p, "insertion_loss_db", 0.0);
        if (r.contains("phase_bits") && !r.at("phase_bits").is_null())
            sc.ris_phase_bits = int_at(r, p, "phase_bits", 0);
        sc.ris_phase_error_sigma_rad = number_at(r, p, "phase_error_sigma_rad", 0.0);
    }

    if (j.contains("node_model")) {
        const json& m = j.at("node_model");
        const std::string p = path + ".node_model";
        require_keys(m, p, {"type", "anchor", "n_antennas", "max_tx_power_dbm",
                            "si_suppression_db", "ext_interference_over_noise_db"});
        if (!m.contains("type") || !m.at("type").is_string())
            throw ConfigError(p + ".type: expected a string");
        const std::string type = m.at("type").get<std::string>();
        if (type == "reflector") {
            sc.node_model = ReflectorModel{};
        } else if (type == "fixedris") {
            FixedRisModel fx;
            if (m.contains("anchor"))
                fx.anchor_point = position_at(m, p, "anchor", {});
            sc.node_model = fx;
        } else if (type == "ris") {
            sc.node_model = AdaptiveRisModel{};
        } else if (type == "ncr") {
            NcrModel ncr;
            ncr.n_antennas = int_at(m, p, "n_antennas", ncr.n_antennas);
            ncr.max_tx_power_dbm = number_at(m, p, "max_tx_power_dbm", ncr.max_tx_power_dbm);
            ncr.si_suppression_db = number_at(m, p, "si_suppression_db", ncr.si_suppression_db);
            ncr.ext_interference_over_noise_db =
                number_at(m, p, "ext_interference_over_noise_db",
                          ncr.ext_interference_over_noise_db);
            sc.node_model = ncr;
        } else {
            throw ConfigError(p + ".type: unknown node model '" + type + "'");
        }
    }
    return sc;
}

inline Scenario load_scenario(const std::filesystem::path& file) {
    return scenario_from_json(config_detail::parse_file(file), file.string() + ": $");
}

inline OverheadConfig overhead_from_json(const nlohmann::json& j,
                                         const std::string& path = "$") {
    using namespace config_detail;
    require_keys(j, path, {"ssb_budget", "ris_list"});
    OverheadConfig cfg;
    cfg.ssb_budget = int_at(j, path, "ssb_budget", cfg.ssb_budget);
    if (j.contains("ris_list")) {
        const json& list = j.at("ris_list");
        if (!list.is_array())
            throw ConfigError(path + ".ris_list: expected an array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string p = path + ".ris_list[" + std::to_string(i) + "]";
            const json& e = list.at(i);
            require_keys(e, p, {"columns", "beams_per_column", "reflects_ssb"});
            RisOverheadEntry entry;
            entry.columns = int_at(e, p, "columns", 0);
            entry.beams_per_column = int_at(e, p, "beams_per_column", 1);
            entry.reflects_ssb = bool_at(e, p, "reflects_ssb", true);
            cfg.ris_list.push_back(entry);
        }
    }
    return cfg;
}

inline OverheadConfig load_overhead_config(const std::filesystem::path& file) {
    return overhead_from_json(config_detail::parse_file(file), file.string() + ": $");
}

} // namespace rissim
