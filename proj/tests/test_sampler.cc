#include "bellsim/sampler.h"

#include <gtest/gtest.h>

#include <cmath>

#include "bellsim/builders.h"

namespace bellsim {
namespace {

Circuit flip_circuit(double p) {
    return Circuit::from_text(
        "QUBITS 1\n"
        "RZ 0\n"
        "E_FLIPX(" +
        std::to_string(p) +
        ") 0\n"
        "MZ 0\n"
        "DETECTOR(Z) rec[0]\n"
        "OBSERVABLE(bit) rec[0]\n");
}

TEST(Sampler, PartitionsReproduceBits) {
    BoostingSpec spec;
    spec.d_bell = 2;
    spec.d_s = 3;
    spec.rounds = 2;
    ChannelModel model = extract_channel_model(build_boosting_circuit(spec).circuit);

    const size_t shots = 257;
    ShotBatch whole = sample_channel_model(model, 77, shots);
    ShotBatch pieced(shots, model.num_detectors, model.num_observables);
    sample_channel_model_range(model, 77, 0, 100, pieced, 0);
    sample_channel_model_range(model, 77, 100, 57, pieced, 100);
    sample_channel_model_range(model, 77, 157, 100, pieced, 157);
    EXPECT_EQ(whole.det_bits, pieced.det_bits);
    EXPECT_EQ(whole.obs_bits, pieced.obs_bits);
}

TEST(Sampler, FlipRateMatchesProbability) {
    ChannelModel model = extract_channel_model(flip_circuit(0.3));
    const size_t shots = 20000;
    ShotBatch batch = sample_channel_model(model, 1, shots);
    size_t fired = 0;
    for (size_t s = 0; s < shots; ++s) {
        fired += batch.detector(s, 0);
        EXPECT_EQ(batch.detector(s, 0), batch.observable(s, 0));
    }
    EXPECT_NEAR(double(fired) / double(shots), 0.3, 5 * std::sqrt(0.3 * 0.7 / double(shots)));
}

TEST(Sampler, DepolarizingChannelVisibleFraction) {
    Circuit c = Circuit::from_text(
        "QUBITS 1\n"
        "RZ 0\n"
        "E_DEPOL1(0.9) 0\n"
        "MZ 0\n"
        "DETECTOR(Z) rec[0]\n");
    ChannelModel model = extract_channel_model(c);
    const size_t shots = 20000;
    ShotBatch batch = sample_channel_model(model, 5, shots);
    size_t fired = 0;
    for (size_t s = 0; s < shots; ++s) {
        fired += batch.detector(s, 0);
    }
    // X and Y show up, Z does not: 2/3 of the 0.9 channel weight.
    EXPECT_NEAR(double(fired) / double(shots), 0.6, 5 * std::sqrt(0.6 * 0.4 / double(shots)));
}

TEST(Sampler, CertainChannelAlwaysFires) {
    ChannelModel model = extract_channel_model(flip_circuit(1.0));
    ShotBatch batch = sample_channel_model(model, 9, 500);
    for (size_t s = 0; s < 500; ++s) {
        EXPECT_TRUE(batch.detector(s, 0));
        EXPECT_TRUE(batch.observable(s, 0));
    }
    EXPECT_EQ(batch.count_observable_flips(0), 500u);
}

TEST(Sampler, SeedsChangeTheBits) {
    BoostingSpec spec;
    spec.d_bell = 2;
    spec.d_s = 3;
    spec.rounds = 2;
    ChannelModel model = extract_channel_model(build_boosting_circuit(spec).circuit);
    ShotBatch a = sample_channel_model(model, 1, 2000);
    ShotBatch b = sample_channel_model(model, 2, 2000);
    EXPECT_NE(a.det_bits, b.det_bits);
}

/// Detector marginals are analytic given independent mechanisms; the exact
/// channel sampler and the collapsed-model sampler must both land on them.
TEST(Sampler, MarginalRatesMatchCollapsedModel) {
    BoostingSpec spec;
    spec.d_bell = 2;
    spec.d_s = 3;
    spec.rounds = 2;
    Circuit circuit = build_boosting_circuit(spec).circuit;
    ChannelModel model = extract_channel_model(circuit);
    DetectorErrorModel dem = collapse_to_dem(model, circuit);

    std::vector<double> expected(dem.num_detectors, 0.0);
    for (const ErrorMechanism &mech : dem.mechanisms) {
        for (uint32_t d : mech.detectors) {
            expected[d] = expected[d] * (1 - mech.probability) +
                          mech.probability * (1 - expected[d]);
        }
    }

    const size_t shots = 40000;
    ShotBatch from_channels = sample_channel_model(model, 11, shots);
    ShotBatch from_dem = sample_dem(dem, 11, shots);
    for (size_t d = 0; d < dem.num_detectors; ++d) {
        const double sigma =
            std::sqrt(std::max(expected[d] * (1 - expected[d]) / double(shots), 1e-12));
        const double tol = 5 * sigma + 1e-4;
        double rate = 0;
        for (size_t s = 0; s < shots; ++s) {
            rate += from_channels.detector(s, d);
        }
        EXPECT_NEAR(rate / double(shots), expected[d], tol) << "channel-sampled detector " << d;
        rate = 0;
        for (size_t s = 0; s < shots; ++s) {
            rate += from_dem.detector(s, d);
        }
        EXPECT_NEAR(rate / double(shots), expected[d], tol) << "dem-sampled detector " << d;
    }
}

}  // namespace
}  // namespace bellsim
