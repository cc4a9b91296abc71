// SPDX-License-Identifier: Apache-2.0
//
// Blind-spot coverage engine: spectral-efficiency maps and CDFs for a simple
// reflector, a fixed-pattern panel, an adaptive panel and an amplify-and-
// forward repeater serving UE positions on a ground grid.
//
// The direct BS-UE link is omitted (blind-spot premise). Small-scale fading
// is Rician per hop, drawn independently per grid cell from seeds derived
// from (scenario seed, cell), so results do not depend on sweep order. The
// panel hangs at the node position facing the BS: its normal is the
// horizontal direction from node to BS, its plane spans the cross axis and
// the vertical. Cells behind the panel plane get zero panel gain.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <variant>
#include <vector>

#include "rissim/fieldsum.hpp"
#include "rissim/io.hpp"
#include "rissim/radio.hpp"

namespace rissim {

// Uncontrolled scatterer: keeps amplitudes, randomizes element phases once
// per realization.
struct ReflectorModel {};

// Panel frozen for a single anchor position. Default anchor: centroid of the
// grid cells in front of the panel, at UE height.
struct FixedRisModel {
    std::optional<Position3> anchor_point;
};

// Panel re-phased for every UE position (conjugate cascade match).
struct AdaptiveRisModel {};

// Full-duplex amplify-and-forward repeater.
struct NcrModel {
    int n_antennas = 16;
    double max_tx_power_dbm = 40.0;
    double si_suppression_db = 90.0;
    double ext_interference_over_noise_db = 10.0;
};

using NodeModel = std::variant<ReflectorModel, FixedRisModel, AdaptiveRisModel, NcrModel>;

struct GridSpec {
    double x0 = 0.0, x1 = 160.0;
    double y0 = -80.0, y1 = 80.0;
    double resolution_m = 2.0;

    // cell centers x0, x0+res, ... up to the extent (inclusive within rounding)
    int nx() const { return static_cast<int>(std::floor((x1 - x0) / resolution_m + 1e-9)) + 1; }
    int ny() const { return static_cast<int>(std::floor((y1 - y0) / resolution_m + 1e-9)) + 1; }
    double x_at(int ix) const { return x0 + ix * resolution_m; }
    double y_at(int iy) const { return y0 + iy * resolution_m; }
    bool contains(double x, double y) const {
        return x >= x0 && x <= x1 && y >= y0 && y <= y1;
    }
};

struct Scenario {
    RadioConfig radio = make_radio_config(15e9, 100e6, 10.0, 40.0);
    Position3 bs{0.0, 0.0, 20.0};
    Position3 node{80.0, 0.0, 2.0};
    double ue_height_m = 1.5;
    GridSpec grid;
    NodeModel node_model = AdaptiveRisModel{};
    double k_factor_db = 10.0;
    std::uint64_t seed = 1;
    int bs_antennas = 64;
    int ris_nx = 16;
    int ris_ny = 16;
    double ris_insertion_loss_db = 0.0;
    std::optional<int> ris_phase_bits;
    double ris_phase_error_sigma_rad = 0.0;
};

struct SEMap {
    GridSpec grid;
    std::vector<double> se; // index iy * nx + ix, bits/s/Hz

    double at(int ix, int iy) const { return se[static_cast<std::size_t>(iy) * grid.nx() + ix]; }
};

struct Cdf {
    std::vector<double> samples; // sorted ascending
    double mean = 0.0;

    double quantile(double p) const {
        if (samples.empty())
            throw std::invalid_argument("Cdf::quantile: empty");
        const double pos = std::clamp(p, 0.0, 1.0) * (samples.size() - 1);
        return samples[static_cast<std::size_t>(std::lround(pos))];
    }
};

namespace detail {

// Panel-local frame: a1 = horizontal cross axis, a2 = vertical, normal
// points from the node toward the BS (horizontal component).
struct PanelFrame {
    Position3 origin;
    Position3 a1, a2, normal;

    Position3 to_local(const Position3& p) const {
        const Position3 d = p - origin;
        return {dot(d, a1), dot(d, a2), dot(d, normal)};
    }
};

inline PanelFrame panel_frame(const Scenario& sc) {
    Position3 toward_bs = sc.bs - sc.node;
    toward_bs.z = 0.0;
    if (norm(toward_bs) <= 0.0)
        throw std::domain_error("panel_frame: BS directly above the node");
    const Position3 n = normalized(toward_bs);
    const Position3 up{0.0, 0.0, 1.0};
    const Position3 a1{n.y * up.z - n.z * up.y, n.z * up.x - n.x * up.z,
                       n.x * up.y - n.y * up.x}; // n x up
    return {sc.node, normalized(a1), up, n};
}

inline std::uint64_t cell_seed(const Scenario& sc, const Position3& ue) {
    // key on millimeter-quantized position so repeated queries agree
    const auto kx = static_cast<std::uint64_t>(std::llround(ue.x * 1000.0));
    const auto ky = static_cast<std::uint64_t>(std::llround(ue.y * 1000.0));
    return mix_seed(sc.seed, 0xFAD0, kx, ky);
}

inline void require_in_grid(const Scenario& sc, const Position3& ue, const char* who) {
    if (!sc.grid.contains(ue.x, ue.y))
        throw std::invalid_argument(std::string(who) + ": UE outside the grid");
}

inline Position3 default_fixed_anchor(const Scenario& sc) {
    const PanelFrame frame = panel_frame(sc);
    const GridSpec& g = sc.grid;
    double sx = 0.0, sy = 0.0;
    long count = 0;
    for (int iy = 0; iy < g.ny(); ++iy)
        for (int ix = 0; ix < g.nx(); ++ix) {
            const Position3 p{g.x_at(ix), g.y_at(iy), sc.ue_height_m};
            if (frame.to_local(p).z > 1e-9) {
                sx += p.x;
                sy += p.y;
                ++count;
            }
        }
    if (count == 0)
        throw std::domain_error("default_fixed_anchor: no grid cell in front of the panel");
    return {sx / count, sy / count, sc.ue_height_m};
}

// Scenario state reused across cells of one sweep.
struct NodeContext {
    PanelFrame frame;
    Position3 bs_local;
    double d1 = 0.0;
    RisPanel panel;          // profile set for reflector/fixed; adaptive per cell
    bool adaptive = false;

    static NodeContext make(const Scenario& sc) {
        NodeContext ctx{panel_frame(sc), {}, 0.0,
                        make_panel(sc.ris_nx, sc.ris_ny, sc.radio.wavelength_m,
                                   sc.ris_insertion_loss_db, sc.ris_phase_bits,
                                   sc.ris_phase_error_sigma_rad),
                        false};
        ctx.bs_local = ctx.frame.to_local(sc.bs);
        ctx.d1 = distance(sc.bs, sc.node);
        if (std::holds_alternative<ReflectorModel>(sc.node_model)) {
            Rng64 rng(mix_seed(sc.seed, 0x5EF1));
            Custom c;
            c.phases.resize(static_cast<std::size_t>(ctx.panel.n_elements()));
            for (double& p : c.phases)
                p = rng.uniform_phase();
            ctx.panel = set_profile(std::move(ctx.panel), c);
        } else if (const auto* fx = std::get_if<FixedRisModel>(&sc.node_model)) {
            const Position3 anchor =
                fx->anchor_point ? *fx->anchor_point : default_fixed_anchor(sc);
            const Position3 al = ctx.frame.to_local(anchor);
            if (al.z <= 1e-9)
                throw std::domain_error("FixedRis anchor is not in front of the panel");
            ctx.panel = set_profile(std::move(ctx.panel), Focusing{ctx.bs_local, al});
        } else if (std::holds_alternative<AdaptiveRisModel>(sc.node_model)) {
            ctx.adaptive = true;
        }
        ctx.panel = apply_impairments(std::move(ctx.panel), mix_seed(sc.seed, 0x1A7E));
        return ctx;
    }
};

inline double fading_power(const Scenario& sc, double hop_distance_m,
                           std::uint64_t seed) {
    Rng64 rng(seed);
    const double k = two_pi / sc.radio.wavelength_m;
    const std::complex<double> h = rician_sample(
        sc.k_factor_db, -std::fmod(k * hop_distance_m, two_pi), rng);
    return std::norm(h);
}

inline double se_from_sinr(double sinr) { return std::log2(1.0 + sinr); }

inline double ris_se_impl(const Scenario& sc, const NodeContext& ctx, const Position3& ue) {
    const Position3 ue_local = ctx.frame.to_local(ue);
    const std::uint64_t cseed = cell_seed(sc, ue);
    if (ue_local.z <= 1e-9)
        return 0.0; // behind or on the panel plane: no reflected path
    const double d2 = norm(ue_local);

    double gain_db;
    if (ctx.adaptive) {
        RisPanel p = set_profile(ctx.panel, Focusing{ctx.bs_local, ue_local});
        p = apply_impairments(std::move(p), mix_seed(sc.seed, 0x1A7E));
        gain_db = field_sum_gain_db(p, ctx.bs_local, ue_local).value;
    } else {
        gain_db = field_sum_gain_db(ctx.panel, ctx.bs_local, ue_local).value;
    }

    const double f1 = fading_power(sc, ctx.d1, mix_seed(cseed, 1));
    const double f2 = fading_power(sc, d2, mix_seed(cseed, 2));
    const double lambda = sc.radio.wavelength_m;
    const double rx_dbm = sc.radio.bs_tx_power_dbm +
                          10.0 * std::log10(double(sc.bs_antennas)) -
                          fspl_db(ctx.d1, lambda).value - fspl_db(d2, lambda).value +
                          gain_db + 10.0 * std::log10(f1 * f2);
    const double snr = std::pow(10.0, (rx_dbm - noise_floor_dbm(sc.radio)) / 10.0);
    return se_from_sinr(snr);
}

inline double ncr_se_impl(const Scenario& sc, const NcrModel& ncr, const Position3& ue) {
    const std::uint64_t cseed = cell_seed(sc, ue);
    const double lambda = sc.radio.wavelength_m;
    const double d1 = distance(sc.bs, sc.node);
    const double d2 = distance(sc.node, ue);
    const double f1 = fading_power(sc, d1, mix_seed(cseed, 1));
    const double f2 = fading_power(sc, d2, mix_seed(cseed, 2));

    const double noise_mw = std::pow(10.0, noise_floor_dbm(sc.radio) / 10.0);
    const double p_bs_mw = std::pow(10.0, sc.radio.bs_tx_power_dbm / 10.0);
    const double p_max_mw = std::pow(10.0, ncr.max_tx_power_dbm / 10.0);
    const double array_gain = double(ncr.n_antennas);
    const double si_isolation = std::pow(10.0, ncr.si_suppression_db / 10.0);
    const double ext_interf_mw =
        noise_mw * std::pow(10.0, ncr.ext_interference_over_noise_db / 10.0);

    const double path1 = std::pow(lambda / (4.0 * std::numbers::pi * d1), 2) * f1;
    const double p_in = p_bs_mw * double(sc.bs_antennas) * array_gain * path1;

    // Amplifier gain: reach max transmit power including the residual
    // self-interference loop, capped 10 dB below the loop-stability limit.
    const double front_end = p_in + noise_mw + ext_interf_mw;
    const double g_power = p_max_mw / (front_end + p_max_mw / si_isolation);
    const double g = std::min(g_power, si_isolation / 10.0);
    const double p_tx = g * front_end / (1.0 - g / si_isolation);

    const double desired_out = g * p_in;
    const double junk_out = g * noise_mw + g * ext_interf_mw + g * p_tx / si_isolation;

    const double path2 = std::pow(lambda / (4.0 * std::numbers::pi * d2), 2) * f2;
    const double link2 = array_gain * path2; // UE antenna gain 0 dBi
    const double sinr = desired_out * link2 / (junk_out * link2 + noise_mw);
    return se_from_sinr(sinr);
}

} // namespace detail

// Spectral efficiency of a panel-assisted cell (reflector, fixed or adaptive
// panel per the scenario's node model).
inline double ris_se(const Scenario& sc, const Position3& ue) {
    detail::require_in_grid(sc, ue, "ris_se");
    if (std::holds_alternative<NcrModel>(sc.node_model))
        throw std::invalid_argument("ris_se: scenario configures an NCR node model");
    const auto ctx = detail::NodeContext::make(sc);
    return detail::ris_se_impl(sc, ctx, ue);
}

// Spectral efficiency behind an amplify-and-forward repeater.
inline double ncr_se(const Scenario& sc, const Position3& ue) {
    detail::require_in_grid(sc, ue, "ncr_se");
    const auto* ncr = std::get_if<NcrModel>(&sc.node_model);
    if (!ncr)
        throw std::invalid_argument("ncr_se: scenario does not configure an NCR node model");
    return detail::ncr_se_impl(sc, *ncr, ue);
}

inline SEMap sweep_grid(const Scenario& sc) {
    const GridSpec& g = sc.grid;
    if (g.nx() <= 0 || g.ny() <= 0 || !(g.resolution_m > 0.0))
        throw std::invalid_argument("sweep_grid: empty grid");
    SEMap map{g, {}};
    map.se.resize(static_cast<std::size_t>(g.nx()) * g.ny());
    const auto* ncr = std::get_if<NcrModel>(&sc.node_model);
    const auto ctx = ncr ? std::optional<detail::NodeContext>{}
                         : detail::NodeContext::make(sc);
    for (int iy = 0; iy < g.ny(); ++iy)
        for (int ix = 0; ix < g.nx(); ++ix) {
            const Position3 ue{g.x_at(ix), g.y_at(iy), sc.ue_height_m};
            const double se = ncr ? detail::ncr_se_impl(sc, *ncr, ue)
                                  : detail::ris_se_impl(sc, *ctx, ue);
            if (!std::isfinite(se) || se < 0.0)
                throw NumericalError("sweep_grid: non-finite spectral efficiency");
            map.se[static_cast<std::size_t>(iy) * g.nx() + ix] = se;
        }
    return map;
}

inline Cdf cdf_of(const SEMap& map) {
    Cdf c;
    c.samples = map.se;
    std::sort(c.samples.begin(), c.samples.end());
    c.mean = c.samples.empty()
                 ? 0.0
                 : std::accumulate(c.samples.begin(), c.samples.end(), 0.0) /
                       static_cast<double>(c.samples.size());
    return c;
}

// CSV matrix: header row carries x centers, first column the y center.
inline io::Table semap_table(const SEMap& map) {
    io::Table t;
    t.columns.push_back("y_m\\x_m");
    for (int ix = 0; ix < map.grid.nx(); ++ix)
        t.columns.push_back(io::format_double(map.grid.x_at(ix)));
    for (int iy = 0; iy < map.grid.ny(); ++iy) {
        std::vector<double> row;
        row.reserve(map.grid.nx() + 1);
        row.push_back(map.grid.y_at(iy));
        for (int ix = 0; ix < map.grid.nx(); ++ix)
            row.push_back(map.at(ix, iy));
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline io::Table cdf_table(const Cdf& cdf) {
    io::Table t;
    t.columns = {"se_bps_hz", "probability"};
    const double n = static_cast<double>(cdf.samples.size());
    for (std::size_t i = 0; i < cdf.samples.size(); ++i)
        t.rows.push_back({cdf.samples[i], (static_cast<double>(i) + 1.0) / n});
    return t;
}

// Linear grayscale mapping, 0 bps/Hz -> 0 and se_max -> 255 (clamped).
inline std::vector<std::uint8_t> semap_pixels(const SEMap& map, double se_max) {
    if (!(se_max > 0.0))
        throw std::invalid_argument("semap_pixels: se_max must be positive");
    std::vector<std::uint8_t> px;
    px.reserve(map.se.size());
    for (int iy = 0; iy < map.grid.ny(); ++iy)
        for (int ix = 0; ix < map.grid.nx(); ++ix) {
            const double v = std::clamp(map.at(ix, iy) / se_max, 0.0, 1.0);
            px.push_back(static_cast<std::uint8_t>(std::lround(v * 255.0)));
        }
    return px;
}

} // namespace rissim
