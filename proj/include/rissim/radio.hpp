// SPDX-License-Identifier: Apache-2.0
//
// rissim: propagation and coverage simulator for reconfigurable reflecting
// panels and network-controlled repeaters
//
// Units, geometry and channel primitives shared by the other headers.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace rissim {

inline constexpr double speed_of_light_m_s = 299'792'458.0;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// A computation produced a non-finite result.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Power ratio in decibels. Addition stacks gains; subtraction removes them.
struct Decibel {
    double value = 0.0;

    friend Decibel operator+(Decibel a, Decibel b) { return {a.value + b.value}; }
    friend Decibel operator-(Decibel a, Decibel b) { return {a.value - b.value}; }
    friend Decibel operator-(Decibel a) { return {-a.value}; }
    friend auto operator<=>(Decibel a, Decibel b) = default;
};

// Nonnegative linear power ratio, the dual of Decibel.
struct LinearPower {
    double value = 0.0;
    friend auto operator<=>(LinearPower a, LinearPower b) = default;
};

inline Decibel db_from_linear(LinearPower p) {
    if (p.value < 0.0)
        throw std::domain_error("db_from_linear: negative linear power");
    if (p.value == 0.0)
        return {-std::numeric_limits<double>::infinity()};
    return {10.0 * std::log10(p.value)};
}

inline LinearPower linear_from_db(Decibel g) {
    if (g.value == -std::numeric_limits<double>::infinity())
        return {0.0};
    return {std::pow(10.0, g.value / 10.0)};
}

struct Position3 {
    double x = 0.0, y = 0.0, z = 0.0;

    friend Position3 operator-(const Position3& a, const Position3& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend Position3 operator+(const Position3& a, const Position3& b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend Position3 operator*(double s, const Position3& a) {
        return {s * a.x, s * a.y, s * a.z};
    }
    friend bool operator==(const Position3&, const Position3&) = default;
};

inline double dot(const Position3& a, const Position3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double norm(const Position3& v) { return std::sqrt(dot(v, v)); }

inline double distance(const Position3& a, const Position3& b) { return norm(a - b); }

inline bool is_finite(const Position3& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

inline Position3 normalized(const Position3& v) {
    const double n = norm(v);
    if (n <= 0.0 || !std::isfinite(n))
        throw std::domain_error("normalized: zero or non-finite vector");
    return {v.x / n, v.y / n, v.z / n};
}

// Carrier, bandwidth and receiver parameters. Wavelength is derived from the
// carrier and kept consistent with it.
struct RadioConfig {
    double frequency_hz = 0.0;
    double wavelength_m = 0.0;
    double bandwidth_hz = 0.0;
    double noise_figure_db = 0.0;
    double bs_tx_power_dbm = 0.0;
};

inline RadioConfig make_radio_config(double frequency_hz,
                                     double bandwidth_hz,
                                     double noise_figure_db,
                                     double bs_tx_power_dbm) {
    if (!(frequency_hz > 0.0))
        throw std::domain_error("make_radio_config: frequency must be positive");
    if (!(bandwidth_hz > 0.0))
        throw std::domain_error("make_radio_config: bandwidth must be positive");
    return {frequency_hz, speed_of_light_m_s / frequency_hz, bandwidth_hz,
            noise_figure_db, bs_tx_power_dbm};
}

// Thermal noise floor in dBm: -174 dBm/Hz + 10 log10(B) + NF.
inline double noise_floor_dbm(const RadioConfig& radio) {
    return -174.0 + 10.0 * std::log10(radio.bandwidth_hz) + radio.noise_figure_db;
}

// Two-hop link geometry around an assisting node. Angles are measured from
// the panel surface normal.
struct LinkGeometry {
    Position3 bs;
    Position3 node;
    Position3 ue;
    double d1_m = 0.0;
    double d2_m = 0.0;
    double alpha_in_rad = 0.0;
    double alpha_out_rad = 0.0;
};

inline LinkGeometry make_link_geometry(const Position3& bs,
                                       const Position3& node,
                                       const Position3& ue,
                                       const Position3& panel_normal) {
    if (!is_finite(bs) || !is_finite(node) || !is_finite(ue))
        throw std::domain_error("make_link_geometry: non-finite position");
    const Position3 n = normalized(panel_normal);
    const double d1 = distance(bs, node);
    const double d2 = distance(node, ue);
    if (!(d1 > 0.0) || !(d2 > 0.0))
        throw std::domain_error("make_link_geometry: coincident endpoints");
    const auto angle_from_normal = [&](const Position3& p) {
        const double c = dot(normalized(p - node), n);
        return std::acos(std::clamp(c, -1.0, 1.0));
    };
    return {bs, node, ue, d1, d2, angle_from_normal(bs), angle_from_normal(ue)};
}

// Free space path loss 20 log10(4 pi d / lambda).
inline Decibel fspl_db(double d_m, double wavelength_m) {
    if (!(d_m > 0.0))
        throw std::domain_error("fspl_db: distance must be positive");
    if (!(wavelength_m > 0.0))
        throw std::domain_error("fspl_db: wavelength must be positive");
    return {20.0 * std::log10(4.0 * std::numbers::pi * d_m / wavelength_m)};
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace detail

// Deterministic 64-bit generator (splitmix64) with portable uniform and
// Box-Muller normal draws. All randomness in the library flows from explicit
// seeds through this type; there is no global RNG.
class Rng64 {
public:
    explicit Rng64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return detail::splitmix64(state_); }

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform_phase() { return uniform() * two_pi; }

    double normal() {
        if (spare_) {
            const double v = *spare_;
            spare_.reset();
            return v;
        }
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(two_pi * u2);
        return r * std::cos(two_pi * u2);
    }

private:
    std::uint64_t state_;
    std::optional<double> spare_;
};

// Stable seed derivation for substreams (per cell, per hop, ...).
inline std::uint64_t mix_seed(std::uint64_t seed,
                              std::uint64_t a,
                              std::uint64_t b = 0,
                              std::uint64_t c = 0) {
    std::uint64_t s = seed;
    for (std::uint64_t p : {a, b, c}) {
        s ^= p;
        (void)detail::splitmix64(s);
    }
    return s;
}

// One Rician small-scale sample: deterministic LoS component of power
// K/(K+1) at the given phase plus a scattered CN(0, 1/(K+1)) component.
// E|h|^2 = 1; path loss is carried separately by the callers.
inline std::complex<double> rician_sample(double k_factor_db,
                                          double los_phase_rad,
                                          Rng64& rng) {
    // 1/K written as 10^(-K_dB/10) so K -> infinity degrades gracefully
    const double inv_k = std::pow(10.0, -k_factor_db / 10.0);
    const double los_power = 1.0 / (1.0 + inv_k);
    const double scatter_power = inv_k / (1.0 + inv_k);
    const std::complex<double> los =
        std::sqrt(los_power) *
        std::complex<double>(std::cos(los_phase_rad), std::sin(los_phase_rad));
    const double n1 = rng.normal();
    const double n2 = rng.normal();
    const std::complex<double> scatter =
        std::sqrt(scatter_power / 2.0) * std::complex<double>(n1, n2);
    return los + scatter;
}

struct TwoHopFading {
    std::complex<double> hop1;
    std::complex<double> hop2;
};

// Independent per-hop Rician gains for a two-hop geometry. The LoS phase of
// each hop is the carrier phase over the hop length; hops draw from separate
// seed-derived substreams.
inline TwoHopFading rician_channel(const LinkGeometry& geometry,
                                   double wavelength_m,
                                   double k_factor_db,
                                   std::uint64_t seed) {
    if (!(wavelength_m > 0.0))
        throw std::domain_error("rician_channel: wavelength must be positive");
    const double k = two_pi / wavelength_m;
    Rng64 rng1(mix_seed(seed, 1));
    Rng64 rng2(mix_seed(seed, 2));
    return {rician_sample(k_factor_db, -std::fmod(k * geometry.d1_m, two_pi), rng1),
            rician_sample(k_factor_db, -std::fmod(k * geometry.d2_m, two_pi), rng2)};
}

} // namespace rissim
