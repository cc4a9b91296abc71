// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "rissim/overhead.hpp"

using namespace rissim;

TEST(SsbDemand, SingleFullSizePanelConsumesBudget) {
    OverheadConfig cfg;
    cfg.ris_list = {{64, 1, true}};
    const auto d = ssb_demand(cfg);
    EXPECT_EQ(d.required, 64);
    EXPECT_TRUE(d.feasible);
    EXPECT_DOUBLE_EQ(d.utilization, 1.0);
}

TEST(SsbDemand, EmptyListNeedsNothing) {
    const auto d = ssb_demand(OverheadConfig{});
    EXPECT_EQ(d.required, 0);
    EXPECT_TRUE(d.feasible);
    EXPECT_DOUBLE_EQ(d.utilization, 0.0);
}

TEST(SsbDemand, TwoPanelsOverflow) {
    OverheadConfig cfg;
    cfg.ris_list = {{40, 1, true}, {40, 1, true}};
    const auto d = ssb_demand(cfg);
    EXPECT_EQ(d.required, 80);
    EXPECT_FALSE(d.feasible);
    EXPECT_DOUBLE_EQ(d.utilization, 80.0 / 64.0);
}

TEST(SsbDemand, NonReflectingPanelsAreFree) {
    OverheadConfig cfg;
    cfg.ris_list = {{64, 1, false}, {8, 2, true}};
    EXPECT_EQ(ssb_demand(cfg).required, 16);
}

TEST(SsbDemand, AdditiveAndMonotone) {
    OverheadConfig a;
    a.ris_list = {{10, 2, true}};
    OverheadConfig b;
    b.ris_list = {{7, 3, true}};
    OverheadConfig both;
    both.ris_list = {{10, 2, true}, {7, 3, true}};
    EXPECT_EQ(ssb_demand(both).required,
              ssb_demand(a).required + ssb_demand(b).required);
    OverheadConfig more = a;
    more.ris_list[0].columns += 5;
    EXPECT_GT(ssb_demand(more).required, ssb_demand(a).required);
}

TEST(SsbDemand, RejectsBadCounts) {
    OverheadConfig cfg;
    cfg.ssb_budget = 0;
    EXPECT_THROW(ssb_demand(cfg), std::domain_error);
    cfg.ssb_budget = 64;
    cfg.ris_list = {{0, 1, true}};
    EXPECT_THROW(ssb_demand(cfg), std::domain_error);
}
