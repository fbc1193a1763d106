#include "bellsim/cost.h"

#include <gtest/gtest.h>

#include <stdexcept>

namespace bellsim {
namespace {

TEST(LlvBoosting, HandEvaluatedFixture) {
    CostReport rep = llv_boosting(3, 19, 1.0, 1.0);
    EXPECT_DOUBLE_EQ(rep.v_buffer, 81.0);
    EXPECT_DOUBLE_EQ(rep.v_factory, 13699.0);
    EXPECT_DOUBLE_EQ(rep.v_total, 13780.0);
    EXPECT_DOUBLE_EQ(rep.inverse_yield, 9.0);
}

TEST(LlvBoosting, BufferVanishesAtHighThroughput) {
    CostReport rep = llv_boosting(3, 3, 1e12, 1.0);
    EXPECT_NEAR(rep.v_total, 3.0 * 17.0, 1e-6);
}

TEST(LlvBoosting, DiscardRateScalesEverything) {
    CostReport half = llv_boosting(3, 19, 1.0, 0.5);
    EXPECT_DOUBLE_EQ(half.v_total, 2 * 13780.0);
    EXPECT_DOUBLE_EQ(half.inverse_yield, 18.0);
}

TEST(LlvSurgery, HandEvaluatedFixtures) {
    CostReport fast = llv_surgery(3, 10.0);
    EXPECT_DOUBLE_EQ(fast.v_buffer, 0.0);
    EXPECT_DOUBLE_EQ(fast.v_total, 58.5);
    EXPECT_DOUBLE_EQ(fast.inverse_yield, 15.0);

    CostReport slow = llv_surgery(3, 1.0);
    EXPECT_DOUBLE_EQ(slow.v_buffer, 144.0);
    EXPECT_DOUBLE_EQ(slow.v_total, 202.5);
}

TEST(LlvSurgery, BufferFreeOnceStreamingKeepsUp) {
    // Consumption is d_s(2d_s - 1) pairs over d_s merge rounds.
    EXPECT_DOUBLE_EQ(llv_surgery(5, 9.0).v_buffer, 0.0);
    EXPECT_GT(llv_surgery(5, 8.9).v_buffer, 0.0);
}

TEST(CostReports, TotalsAreAdditive) {
    for (int d : {3, 5, 7}) {
        for (double r : {0.01, 0.5, 3.0}) {
            CostReport b = llv_boosting(d, 19, r, 0.8);
            EXPECT_DOUBLE_EQ(b.v_total, b.v_buffer + b.v_factory);
            CostReport s = llv_surgery(d, r);
            EXPECT_DOUBLE_EQ(s.v_total, s.v_buffer + s.v_factory);
        }
    }
}

TEST(PipelinedVolume, HandEvaluatedFixtures) {
    EXPECT_DOUBLE_EQ(pipelined_volume(6, 4, 1, 3), 918.0);
    EXPECT_DOUBLE_EQ(pipelined_volume(10, 8, 1, 19), 34.0 * 13699.0);
    EXPECT_DOUBLE_EQ(pipelined_volume(4, 4, 0, 3), 0.0);
}

TEST(CostInputs, RejectBadParameters) {
    EXPECT_THROW(llv_boosting(2, 19, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(llv_boosting(3, 4, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(llv_boosting(3, 19, 0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(llv_boosting(3, 19, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(llv_boosting(3, 19, 1.0, 1.5), std::invalid_argument);
    EXPECT_THROW(llv_surgery(4, 1.0), std::invalid_argument);
    EXPECT_THROW(llv_surgery(3, -1.0), std::invalid_argument);
    EXPECT_THROW(pipelined_volume(6, 4, 3, 3), std::invalid_argument);
    EXPECT_THROW(pipelined_volume(4, 6, 0, 3), std::invalid_argument);
    EXPECT_THROW(pipelined_volume(6, 4, 1, 4), std::invalid_argument);
}

}  // namespace
}  // namespace bellsim
