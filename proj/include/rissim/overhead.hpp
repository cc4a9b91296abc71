// SPDX-License-Identifier: Apache-2.0
//
// Synchronization-signal budget estimator: how much of a cell's SSB beam
// budget a set of reflecting panels consumes.

#pragma once

#include <stdexcept>
#include <vector>

namespace rissim {

struct RisOverheadEntry {
    int columns = 0;
    int beams_per_column = 1; // FFT-based horizontal beams: one per column
    bool reflects_ssb = true;
};

struct OverheadConfig {
    int ssb_budget = 64;
    std::vector<RisOverheadEntry> ris_list;
};

struct SsbDemand {
    int required = 0;
    bool feasible = true;
    double utilization = 0.0;
};

inline SsbDemand ssb_demand(const OverheadConfig& config) {
    if (config.ssb_budget <= 0)
        throw std::domain_error("ssb_demand: budget must be positive");
    int required = 0;
    for (const auto& ris : config.ris_list) {
        if (ris.columns <= 0 || ris.beams_per_column <= 0)
            throw std::domain_error("ssb_demand: counts must be positive");
        if (ris.reflects_ssb)
            required += ris.columns * ris.beams_per_column;
    }
    return {required, required <= config.ssb_budget,
            static_cast<double>(required) / config.ssb_budget};
}

} // namespace rissim
