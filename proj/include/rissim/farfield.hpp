// SPDX-License-Identifier: Apache-2.0
//
// Closed-form far-field link budget of a reflecting panel modeled as two
// interconnected aperture antennas: per-side aperture gains with projected
// area, double Friis over the two hops, and the half-power beam footprint.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rissim/io.hpp"
#include "rissim/radio.hpp"

namespace rissim {

// A studied deployment: carrier, hop split and panel size. Element count and
// area are tied by the half-wavelength grid, area = n * (lambda/2)^2.
struct DeploymentCase {
    std::string name;
    double frequency_hz = 0.0;
    double d1_m = 0.0;
    double d2_m = 0.0;
    int n_elements = 0;
    double area_m2 = 0.0;
    double alpha_in_rad = 0.0;
    double alpha_out_rad = 0.0;

    double wavelength_m() const { return speed_of_light_m_s / frequency_hz; }
};

inline DeploymentCase make_case(std::string name,
                                double frequency_hz,
                                double d1_m,
                                double d2_m,
                                int n_elements,
                                double alpha_in_rad = 0.0,
                                double alpha_out_rad = 0.0) {
    if (!(frequency_hz > 0.0) || !(d1_m > 0.0) || !(d2_m > 0.0) || n_elements <= 0)
        throw std::domain_error("make_case: non-positive parameter");
    const double lambda = speed_of_light_m_s / frequency_hz;
    const double area = n_elements * lambda * lambda / 4.0;
    return {std::move(name), frequency_hz, d1_m, d2_m, n_elements, area,
            alpha_in_rad, alpha_out_rad};
}

// The four studied cases, boresight. 3S keeps area = n (lambda/2)^2, which
// matches its quoted 1.6 m x 1.6 m physical size.
inline std::array<DeploymentCase, 4> deployment_catalog() {
    return {make_case("1S", 30e9, 100.0, 100.0, 1000),
            make_case("1L", 30e9, 100.0, 100.0, 10000),
            make_case("2L", 30e9, 180.0, 20.0, 10000),
            make_case("3S", 3e9, 180.0, 20.0, 1000)};
}

inline std::optional<DeploymentCase> find_case(std::string_view name) {
    for (auto& c : deployment_catalog())
        if (c.name == name)
            return c;
    return std::nullopt;
}

// Aperture gain 10 log10(4 pi A cos(alpha) / lambda^2); off boresight the
// projected area governs.
inline Decibel aperture_gain_db(double area_m2, double wavelength_m, double alpha_rad) {
    if (!(area_m2 > 0.0))
        throw std::domain_error("aperture_gain_db: area must be positive");
    if (!(wavelength_m > 0.0))
        throw std::domain_error("aperture_gain_db: wavelength must be positive");
    if (!(alpha_rad >= 0.0) || alpha_rad >= std::numbers::pi / 2.0)
        throw std::domain_error("aperture_gain_db: angle must lie in [0, pi/2)");
    return {10.0 * std::log10(4.0 * std::numbers::pi * area_m2 * std::cos(alpha_rad) /
                              (wavelength_m * wavelength_m))};
}

inline Decibel two_hop_fspl_db(double d1_m, double d2_m, double wavelength_m) {
    return fspl_db(d1_m, wavelength_m) + fspl_db(d2_m, wavelength_m);
}

// End-to-end budget decomposition. Terminal gains are kept as explicit terms
// but cancel in the relative gain, which compares the panel-assisted path
// with a direct hop over d1+d2.
struct LinkBudget {
    double fspl_hop1_db = 0.0;
    double fspl_hop2_db = 0.0;
    double fspl_single_hop_db = 0.0;
    double ris_rx_gain_db = 0.0;
    double ris_tx_gain_db = 0.0;
    double bs_gain_db = 0.0;
    double ue_gain_db = 0.0;
    double gain_relative_to_los_db = 0.0;
};

inline LinkBudget evaluate_case(const DeploymentCase& c) {
    const double lambda = c.wavelength_m();
    LinkBudget b;
    b.fspl_hop1_db = fspl_db(c.d1_m, lambda).value;
    b.fspl_hop2_db = fspl_db(c.d2_m, lambda).value;
    b.fspl_single_hop_db = fspl_db(c.d1_m + c.d2_m, lambda).value;
    b.ris_rx_gain_db = aperture_gain_db(c.area_m2, lambda, c.alpha_in_rad).value;
    b.ris_tx_gain_db = aperture_gain_db(c.area_m2, lambda, c.alpha_out_rad).value;
    b.gain_relative_to_los_db = b.ris_rx_gain_db + b.ris_tx_gain_db -
                                (b.fspl_hop1_db + b.fspl_hop2_db) +
                                b.fspl_single_hop_db;
    return b;
}

// Direct-hop reference with no assisting node: relative gain 0 by definition.
inline LinkBudget los_reference_budget(double total_distance_m, double wavelength_m) {
    LinkBudget b;
    b.fspl_hop1_db = fspl_db(total_distance_m, wavelength_m).value;
    b.fspl_single_hop_db = b.fspl_hop1_db;
    b.gain_relative_to_los_db = 0.0;
    return b;
}

// Half-power beam footprint at a distance, from the boresight beamwidth of a
// uniformly excited circular aperture (1.02 lambda / D) with D the
// equivalent-circle diameter sqrt(4 A / pi). Small-angle linearization.
inline double half_power_beam_diameter_m(double area_m2,
                                         double wavelength_m,
                                         double distance_m) {
    if (!(area_m2 > 0.0) || !(wavelength_m > 0.0) || !(distance_m > 0.0))
        throw std::domain_error("half_power_beam_diameter_m: non-positive argument");
    const double diameter = std::sqrt(4.0 * area_m2 / std::numbers::pi);
    return distance_m * 1.02 * wavelength_m / diameter;
}

namespace detail {

inline void require_monotone_grid(std::span<const double> grid, const char* who) {
    if (grid.empty())
        throw std::invalid_argument(std::string(who) + ": empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument(std::string(who) + ": grid must be strictly increasing");
}

} // namespace detail

// Path loss over a split two-hop path next to the direct single hop.
inline io::Table sweep_fspl(std::span<const double> total_distance_m_grid,
                            double split_ratio,
                            double wavelength_m) {
    detail::require_monotone_grid(total_distance_m_grid, "sweep_fspl");
    if (!(split_ratio > 0.0) || !(split_ratio < 1.0))
        throw std::invalid_argument("sweep_fspl: split ratio must lie in (0, 1)");
    io::Table t;
    t.columns = {"total_distance_m", "distance_over_lambda", "single_hop_db", "two_hop_db"};
    for (double d : total_distance_m_grid) {
        const double hop1 = split_ratio * d;
        const double hop2 = (1.0 - split_ratio) * d;
        t.rows.push_back({d, d / wavelength_m, fspl_db(d, wavelength_m).value,
                          two_hop_fspl_db(hop1, hop2, wavelength_m).value});
    }
    return t;
}

// Combined two-sided far-field panel gain as a function of area (boresight).
inline io::Table sweep_ris_gain(std::span<const double> area_m2_grid, double wavelength_m) {
    detail::require_monotone_grid(area_m2_grid, "sweep_ris_gain");
    io::Table t;
    t.columns = {"area_m2", "area_over_lambda2", "ris_gain_db"};
    for (double a : area_m2_grid) {
        const double side = aperture_gain_db(a, wavelength_m, 0.0).value;
        t.rows.push_back({a, a / (wavelength_m * wavelength_m), 2.0 * side});
    }
    return t;
}

inline io::Table sweep_beamwidth(std::span<const double> area_m2_grid,
                                 double wavelength_m,
                                 std::span<const double> distances_m) {
    detail::require_monotone_grid(area_m2_grid, "sweep_beamwidth");
    if (distances_m.empty())
        throw std::invalid_argument("sweep_beamwidth: no distances");
    io::Table t;
    t.columns = {"area_m2", "area_over_lambda2"};
    for (double d : distances_m)
        t.columns.push_back("beam_diameter_m_at_" + io::format_double(d) + "m");
    for (double a : area_m2_grid) {
        std::vector<double> row = {a, a / (wavelength_m * wavelength_m)};
        for (double d : distances_m)
            row.push_back(half_power_beam_diameter_m(a, wavelength_m, d));
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace rissim
