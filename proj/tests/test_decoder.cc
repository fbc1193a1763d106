#include "bellsim/decoder.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "bellsim/builders.h"
#include "bellsim/error_model.h"
#include "bellsim/sampler.h"

namespace {

using namespace bellsim;

int64_t scaled_weight(double p) {
    if (p >= 0.5) return 1;
    return std::max<int64_t>(1, std::llround(std::log((1.0 - p) / p) * 1024.0));
}

DetectorErrorModel toy_model() {
    // A five-detector chain with boundaries at both ends, the logical flip
    // riding on the 2-3 edge, a one-detector shortcut to the flipped side in
    // the middle, plus a two-detector island with no boundary at all.
    DetectorErrorModel dem;
    dem.num_detectors = 7;
    dem.num_observables = 1;
    dem.detector_basis.assign(7, 'X');
    dem.detector_coords.assign(7, {});
    dem.observable_names = {"xx"};
    auto add = [&](double p, std::vector<uint32_t> dets, std::vector<uint32_t> obs) {
        dem.mechanisms.push_back({p, std::move(dets), std::move(obs)});
    };
    add(0.020, {0}, {});
    add(0.010, {0, 1}, {});
    add(0.015, {1, 2}, {});
    add(0.012, {2, 3}, {0});
    add(0.018, {3, 4}, {});
    add(0.025, {4}, {});
    add(0.005, {2}, {0});
    add(0.030, {5, 6}, {});
    return dem;
}

// Exhaustive minimum over mechanism subsets with a given defect pattern and
// logical outcome; completely independent of the matching construction.
std::map<std::pair<uint32_t, int>, int64_t> enumerate_minima(const DetectorErrorModel &dem) {
    std::map<std::pair<uint32_t, int>, int64_t> best;
    size_t m = dem.mechanisms.size();
    for (uint32_t subset = 0; subset < (1u << m); ++subset) {
        uint32_t symptom = 0;
        int obs = 0;
        int64_t w = 0;
        for (size_t i = 0; i < m; ++i) {
            if (!((subset >> i) & 1)) continue;
            for (uint32_t d : dem.mechanisms[i].detectors) symptom ^= 1u << d;
            obs ^= static_cast<int>(dem.mechanisms[i].observables.size());
            w += scaled_weight(dem.mechanisms[i].probability);
        }
        auto key = std::make_pair(symptom, obs & 1);
        auto it = best.find(key);
        if (it == best.end() || w < it->second) best[key] = w;
    }
    return best;
}

TEST(DecodingGraph, MatchesExhaustiveEnumeration) {
    DetectorErrorModel dem = toy_model();
    DecodingGraph g(dem, 'X', 0);
    ASSERT_EQ(g.num_nodes(), 7u);
    auto best = enumerate_minima(dem);
    for (uint32_t symptom = 0; symptom < (1u << 7); ++symptom) {
        for (int cls = 0; cls < 2; ++cls) {
            std::vector<uint32_t> defects;
            for (uint32_t d = 0; d < 7; ++d)
                if ((symptom >> d) & 1) defects.push_back(d);
            auto it = best.find({symptom, cls});
            if (it == best.end()) {
                EXPECT_THROW(g.forced_weight(defects, cls), std::logic_error)
                    << "symptom " << symptom << " cls " << cls;
            } else {
                EXPECT_EQ(g.forced_weight(defects, cls), it->second)
                    << "symptom " << symptom << " cls " << cls;
            }
        }
    }
}

TEST(DecodingGraph, GapAndPredictionAreConsistent) {
    DetectorErrorModel dem = toy_model();
    DecodingGraph g(dem, 'X', 0);
    EXPECT_GT(g.crossing_weight(), 0);
    for (uint32_t symptom : {0u, 1u, 5u, 9u, 24u, 96u}) {
        std::vector<uint32_t> defects;
        for (uint32_t d = 0; d < 7; ++d)
            if ((symptom >> d) & 1) defects.push_back(d);
        auto dec = g.decode(defects);
        EXPECT_EQ(dec.gap, std::abs(dec.weight1 - dec.weight0));
        EXPECT_EQ(dec.predicted, dec.weight1 < dec.weight0 ? 1 : 0);
        EXPECT_EQ(g.forced_weight(defects, 0), dec.weight0);
    }
    // No defects: the trivial class costs nothing, the other a full crossing.
    auto dec = g.decode({});
    EXPECT_EQ(dec.weight0, 0);
    EXPECT_EQ(dec.weight1, g.crossing_weight());
    EXPECT_EQ(dec.predicted, 0);
}

TEST(GapDecoder, BuildsFromEntangledPatchCircuits) {
    for (int d : {3, 5}) {
        BoostingSpec spec;
        spec.d_bell = 3;
        spec.d_s = d;
        auto built = build_boosting_circuit(spec);
        auto dem = build_detector_error_model(built.circuit);
        GapDecoder dec(dem);
        size_t nx = 0, nz = 0;
        for (char b : dem.detector_basis) (b == 'X' ? nx : nz)++;
        EXPECT_EQ(dec.x_graph().num_nodes(), nx);
        EXPECT_EQ(dec.z_graph().num_nodes(), nz);
        EXPECT_GT(dec.x_graph().num_boundary_edges(), 0u);
        EXPECT_GT(dec.z_graph().num_boundary_edges(), 0u);
        EXPECT_LT(dec.x_graph().crossing_weight(), int64_t{1} << 40);
        EXPECT_LT(dec.z_graph().crossing_weight(), int64_t{1} << 40);
    }
}

TEST(GapDecoder, BuildsFromMergedPatchCircuits) {
    for (int d : {3, 5}) {
        SurgerySpec spec;
        spec.d_s = d;
        auto built = build_surgery_circuit(spec);
        auto dem = build_detector_error_model(built.circuit);
        GapDecoder dec(dem);
        EXPECT_GT(dec.x_graph().num_bulk_edges(), 0u);
        EXPECT_GT(dec.z_graph().num_bulk_edges(), 0u);
        EXPECT_LT(dec.x_graph().crossing_weight(), int64_t{1} << 40);
        EXPECT_LT(dec.z_graph().crossing_weight(), int64_t{1} << 40);
    }
}

TEST(GapDecoder, DecodesSampledBellShots) {
    BoostingSpec spec;
    auto built = build_boosting_circuit(spec);
    auto dem = build_detector_error_model(built.circuit);
    GapDecoder dec(dem);
    size_t shots = 2000;
    ShotBatch batch = sample_dem(dem, 1234, shots);
    size_t errors = 0;
    std::vector<std::pair<int64_t, bool>> by_gap;
    for (size_t s = 0; s < shots; ++s) {
        ShotDecode r = dec.decode(batch, s);
        bool err = (r.pred_xx != batch.observable(s, 0)) || (r.pred_zz != batch.observable(s, 1));
        errors += err;
        by_gap.emplace_back(r.gap, err);
    }
    double rate = double(errors) / double(shots);
    EXPECT_GT(rate, 0.0);
    EXPECT_LT(rate, 0.35);
    // Shots with a large complementary gap should be the reliable ones.
    std::sort(by_gap.begin(), by_gap.end(),
              [](const auto &a, const auto &b) { return a.first > b.first; });
    size_t top_err = 0, bot_err = 0;
    for (size_t s = 0; s < shots / 2; ++s) top_err += by_gap[s].second;
    for (size_t s = shots / 2; s < shots; ++s) bot_err += by_gap[s].second;
    EXPECT_LT(top_err * 2, bot_err + 1);
    // Same shot decodes identically every time.
    ShotDecode a = dec.decode(batch, 17), b = dec.decode(batch, 17);
    EXPECT_EQ(a.pred_xx, b.pred_xx);
    EXPECT_EQ(a.gap, b.gap);
}

}  // namespace
