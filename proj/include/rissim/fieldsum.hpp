// SPDX-License-Identifier: Apache-2.0
//
// Element-level complex field summation over a reflecting panel: exact
// per-element path phases, phase profiles (plane-wave gradient, finite-
// distance focusing), impairment knobs (quantization, phase error, insertion
// loss) and far-field radiation patterns.
//
// Conventions: the panel lies in the z = 0 plane with its normal along +z,
// elements on a lambda/2 lattice centered on the origin. Endpoints are given
// in this panel-local frame and must lie strictly in front of the panel.
//
// Normalization: the combined (receive + re-radiate) gain is
//   pi^2 cos(a_i) cos(a_o) |sum_n a_n exp(j(phi_n - k r1_n - k r2_n))|^2,
// i.e. per-element peak gain 4 pi (lambda/2)^2 / lambda^2 = pi on each side
// with cosine obliquity taken at the panel center. With aligned phases this
// reproduces the aperture formula (4 pi A / lambda^2)^2 cos(a_i) cos(a_o).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "rissim/farfield.hpp"
#include "rissim/io.hpp"
#include "rissim/radio.hpp"

namespace rissim {

struct RisPanel {
    int nx = 0;
    int ny = 0;
    double wavelength_m = 0.0;
    std::vector<double> phases;           // nx*ny, index ix*ny + iy
    double amplitude = 1.0;               // uniform element amplitude
    double insertion_loss_db = 0.0;
    std::optional<int> phase_bits;        // quantizer resolution, absent = ideal
    double phase_error_sigma_rad = 0.0;

    int n_elements() const { return nx * ny; }
    double pitch_m() const { return wavelength_m / 2.0; }
    double area_m2() const { return n_elements() * wavelength_m * wavelength_m / 4.0; }
    // largest aperture dimension (diagonal), for Fraunhofer estimates
    double diagonal_m() const {
        return pitch_m() * std::sqrt(double(nx) * nx + double(ny) * ny);
    }
    double fraunhofer_distance_m() const {
        const double d = diagonal_m();
        return 2.0 * d * d / wavelength_m;
    }
    double element_x(int ix) const { return (ix - (nx - 1) * 0.5) * pitch_m(); }
    double element_y(int iy) const { return (iy - (ny - 1) * 0.5) * pitch_m(); }
};

inline RisPanel make_panel(int nx,
                           int ny,
                           double wavelength_m,
                           double insertion_loss_db = 0.0,
                           std::optional<int> phase_bits = std::nullopt,
                           double phase_error_sigma_rad = 0.0) {
    if (nx <= 0 || ny <= 0)
        throw std::domain_error("make_panel: element counts must be positive");
    if (!(wavelength_m > 0.0))
        throw std::domain_error("make_panel: wavelength must be positive");
    if (insertion_loss_db < 0.0)
        throw std::domain_error("make_panel: insertion loss must be nonnegative");
    if (phase_bits && *phase_bits < 1)
        throw std::domain_error("make_panel: phase bits must be >= 1");
    if (phase_error_sigma_rad < 0.0)
        throw std::domain_error("make_panel: phase error sigma must be nonnegative");
    RisPanel p;
    p.nx = nx;
    p.ny = ny;
    p.wavelength_m = wavelength_m;
    p.phases.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    p.insertion_loss_db = insertion_loss_db;
    p.phase_bits = phase_bits;
    p.phase_error_sigma_rad = phase_error_sigma_rad;
    return p;
}

// Squarest exact factorization of the element count (1000 -> 25 x 40);
// falls back to the nearest square when none is usable.
inline std::pair<int, int> panel_dims_for_element_count(int n_elements) {
    if (n_elements <= 0)
        throw std::domain_error("panel_dims_for_element_count: must be positive");
    for (int a = static_cast<int>(std::sqrt(double(n_elements))); a >= 1; --a) {
        if (n_elements % a == 0 && n_elements / a <= 4 * a)
            return {a, n_elements / a};
    }
    const int s = static_cast<int>(std::lround(std::sqrt(double(n_elements))));
    return {s, s};
}

// Plane-wave in, plane-wave out: the element phase cancels the linear path
// phase of both directions. Directions point from the panel toward the
// source and toward the destination.
struct FlatGradient {
    Position3 incident_dir;
    Position3 outgoing_dir;
};

// Curved phase front canceling the exact per-element propagation phase
// k(|r - s| + |r - f|) toward a finite-distance focal point.
struct Focusing {
    Position3 source_point;
    Position3 focus_point;
};

// All elements equal: a flat metal plate.
struct Uniform {};

struct Custom {
    std::vector<double> phases;
};

using PhaseProfile = std::variant<FlatGradient, Focusing, Uniform, Custom>;

inline double wrap_phase(double phi) {
    const double w = std::fmod(phi, two_pi);
    return w < 0.0 ? w + two_pi : w;
}

inline RisPanel set_profile(RisPanel panel, const PhaseProfile& profile) {
    const double k = two_pi / panel.wavelength_m;
    if (const auto* fg = std::get_if<FlatGradient>(&profile)) {
        const Position3 s = normalized(fg->incident_dir);
        const Position3 d = normalized(fg->outgoing_dir);
        for (int ix = 0; ix < panel.nx; ++ix)
            for (int iy = 0; iy < panel.ny; ++iy) {
                const double x = panel.element_x(ix);
                const double y = panel.element_y(iy);
                panel.phases[static_cast<std::size_t>(ix) * panel.ny + iy] =
                    wrap_phase(-k * ((s.x + d.x) * x + (s.y + d.y) * y));
            }
    } else if (const auto* fo = std::get_if<Focusing>(&profile)) {
        if (fo->source_point.z == 0.0 || fo->focus_point.z == 0.0)
            throw std::domain_error("set_profile: focusing point on the panel plane");
        for (int ix = 0; ix < panel.nx; ++ix)
            for (int iy = 0; iy < panel.ny; ++iy) {
                const double x = panel.element_x(ix);
                const double y = panel.element_y(iy);
                const double r1 = distance(fo->source_point, {x, y, 0.0});
                const double r2 = distance(fo->focus_point, {x, y, 0.0});
                panel.phases[static_cast<std::size_t>(ix) * panel.ny + iy] =
                    wrap_phase(k * (r1 + r2));
            }
    } else if (std::holds_alternative<Uniform>(profile)) {
        std::fill(panel.phases.begin(), panel.phases.end(), 0.0);
    } else {
        const auto& c = std::get<Custom>(profile);
        if (c.phases.size() != panel.phases.size())
            throw std::invalid_argument("set_profile: custom phase count mismatch");
        panel.phases = c.phases;
    }
    return panel;
}

// Quantize to 2^bits levels anchored at 0 (round half-up), add seeded
// zero-mean Gaussian phase noise, apply insertion loss to the amplitude.
inline RisPanel apply_impairments(RisPanel panel, std::uint64_t seed) {
    if (panel.phase_bits) {
        const double step = two_pi / std::pow(2.0, *panel.phase_bits);
        for (double& phi : panel.phases)
            phi = wrap_phase(std::floor(phi / step + 0.5) * step);
    }
    if (panel.phase_error_sigma_rad > 0.0) {
        Rng64 rng(mix_seed(seed, 0x70A5E));
        for (double& phi : panel.phases)
            phi = wrap_phase(phi + panel.phase_error_sigma_rad * rng.normal());
    }
    panel.amplitude = std::pow(10.0, -panel.insertion_loss_db / 20.0);
    return panel;
}

namespace detail {

inline void require_in_front(const Position3& p, const char* who) {
    if (!is_finite(p))
        throw std::domain_error(std::string(who) + ": non-finite point");
    if (p.z == 0.0)
        throw std::domain_error(std::string(who) + ": point on the panel plane");
    if (p.z < 0.0)
        throw std::domain_error(std::string(who) + ": point behind the panel plane");
}

} // namespace detail

// Combined two-sided panel gain between two points, exact per-element
// distances on both sides. In the far field with an ideal matched gradient
// this converges to the closed-form combined aperture gain.
inline Decibel field_sum_gain_db(const RisPanel& panel,
                                 const Position3& source_point,
                                 const Position3& dest_point) {
    detail::require_in_front(source_point, "field_sum_gain_db");
    detail::require_in_front(dest_point, "field_sum_gain_db");
    const double k = two_pi / panel.wavelength_m;
    std::complex<double> sum = 0.0;
    for (int ix = 0; ix < panel.nx; ++ix) {
        const double x = panel.element_x(ix);
        for (int iy = 0; iy < panel.ny; ++iy) {
            const double y = panel.element_y(iy);
            const double r1 = distance(source_point, {x, y, 0.0});
            const double r2 = distance(dest_point, {x, y, 0.0});
            const double psi =
                panel.phases[static_cast<std::size_t>(ix) * panel.ny + iy] -
                k * r1 - k * r2;
            sum += std::complex<double>(std::cos(psi), std::sin(psi));
        }
    }
    const double cos_in = source_point.z / norm(source_point);
    const double cos_out = dest_point.z / norm(dest_point);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double amp2 = panel.amplitude * panel.amplitude;
    return db_from_linear({pi2 * cos_in * cos_out * amp2 * std::norm(sum)});
}

// Expected main-beam loss of b-bit phase quantization: the coherent power of
// a uniform phase error over [-pi/2^b, pi/2^b), -20 log10(sinc(pi/2^b)).
inline Decibel quantization_loss_db(int phase_bits) {
    if (phase_bits < 1)
        throw std::domain_error("quantization_loss_db: bits must be >= 1");
    const double x = std::numbers::pi / std::pow(2.0, phase_bits);
    return {-20.0 * std::log10(std::sin(x) / x)};
}

struct PatternSample {
    Position3 direction;
    double gain_db = 0.0;
};

// Far-field re-radiation pattern for a fixed illumination point, same
// normalization as field_sum_gain_db (destination taken to infinity along
// each direction). Directions below the panel plane carry no power.
inline std::vector<PatternSample> radiation_pattern(const RisPanel& panel,
                                                    const Position3& source_point,
                                                    std::span<const Position3> direction_grid) {
    if (direction_grid.empty())
        throw std::invalid_argument("radiation_pattern: empty direction grid");
    detail::require_in_front(source_point, "radiation_pattern");
    const double k = two_pi / panel.wavelength_m;
    const int n = panel.n_elements();

    // per-element illumination phase, shared across directions
    std::vector<double> base(static_cast<std::size_t>(n));
    std::vector<double> ex(static_cast<std::size_t>(n)), ey(static_cast<std::size_t>(n));
    for (int ix = 0; ix < panel.nx; ++ix)
        for (int iy = 0; iy < panel.ny; ++iy) {
            const std::size_t idx = static_cast<std::size_t>(ix) * panel.ny + iy;
            ex[idx] = panel.element_x(ix);
            ey[idx] = panel.element_y(iy);
            base[idx] = panel.phases[idx] - k * distance(source_point, {ex[idx], ey[idx], 0.0});
        }
    const double cos_in = source_point.z / norm(source_point);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double amp2 = panel.amplitude * panel.amplitude;

    std::vector<PatternSample> out;
    out.reserve(direction_grid.size());
    for (const Position3& dir : direction_grid) {
        const Position3 u = normalized(dir);
        double gain = 0.0;
        if (u.z > 0.0) {
            std::complex<double> sum = 0.0;
            for (std::size_t idx = 0; idx < base.size(); ++idx) {
                const double psi = base[idx] + k * (u.x * ex[idx] + u.y * ey[idx]);
                sum += std::complex<double>(std::cos(psi), std::sin(psi));
            }
            gain = pi2 * cos_in * u.z * amp2 * std::norm(sum);
        }
        out.push_back({u, db_from_linear({gain}).value});
    }
    return out;
}

// Gain-vs-distance curves for a deployment case: plane-wave gradient versus
// per-distance focusing, next to the far-field closed form. Source sits at
// the case's d1, boresight.
inline io::Table near_gain_sweep(const DeploymentCase& deployment,
                                 std::span<const double> dest_distance_m_grid) {
    if (dest_distance_m_grid.empty())
        throw std::invalid_argument("near_gain_sweep: empty distance grid");
    const double lambda = deployment.wavelength_m();
    const auto [nx, ny] = panel_dims_for_element_count(deployment.n_elements);
    RisPanel panel = make_panel(nx, ny, lambda);
    const Position3 source{0.0, 0.0, deployment.d1_m};
    const RisPanel flat = set_profile(
        panel, FlatGradient{{0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}});
    const double far_db = 2.0 * aperture_gain_db(panel.area_m2(), lambda, 0.0).value;

    io::Table t;
    t.columns = {"distance_m", "distance_over_lambda", "flat_gradient_gain_db",
                 "focusing_gain_db", "farfield_gain_db"};
    for (double d : dest_distance_m_grid) {
        const Position3 dest{0.0, 0.0, d};
        const RisPanel focused = set_profile(panel, Focusing{source, dest});
        t.rows.push_back({d, d / lambda,
                          field_sum_gain_db(flat, source, dest).value,
                          field_sum_gain_db(focused, source, dest).value,
                          far_db});
    }
    return t;
}

} // namespace rissim
