#ifndef BELLSIM_SAMPLER_H
#define BELLSIM_SAMPLER_H

#include <cstdint>
#include <vector>

#include "bellsim/error_model.h"

namespace bellsim {

/// Bit-packed detection events and true observable flips, one row per shot.
struct ShotBatch {
    size_t num_shots = 0;
    size_t num_detectors = 0;
    size_t num_observables = 0;
    std::vector<uint64_t> det_bits;
    std::vector<uint64_t> obs_bits;

    ShotBatch() = default;
    ShotBatch(size_t shots, size_t detectors, size_t observables)
        : num_shots(shots),
          num_detectors(detectors),
          num_observables(observables),
          det_bits(shots * det_words()),
          obs_bits(shots * obs_words()) {}

    size_t det_words() const {
        return (num_detectors + 63) / 64;
    }
    size_t obs_words() const {
        return (num_observables + 63) / 64;
    }
    const uint64_t *detector_row(size_t shot) const {
        return det_bits.data() + shot * det_words();
    }
    bool detector(size_t shot, size_t d) const {
        return (detector_row(shot)[d / 64] >> (d % 64)) & 1;
    }
    bool observable(size_t shot, size_t j) const {
        return (obs_bits[shot * obs_words() + j / 64] >> (j % 64)) & 1;
    }
    /// Symptom ids >= kObservableBase land in the observable plane.
    void toggle(size_t shot, uint32_t symptom) {
        if (symptom >= kObservableBase) {
            const uint32_t j = symptom - kObservableBase;
            obs_bits[shot * obs_words() + j / 64] ^= uint64_t(1) << (j % 64);
        } else {
            det_bits[shot * det_words() + symptom / 64] ^= uint64_t(1) << (symptom % 64);
        }
    }
    size_t count_observable_flips(size_t j) const {
        size_t count = 0;
        for (size_t s = 0; s < num_shots; ++s) {
            count += observable(s, j);
        }
        return count;
    }
};

/// Samples absolute shots [first_shot, first_shot + count) into rows
/// [row0, row0 + count) of out. Streams are keyed by (seed, absolute shot),
/// so any partition of a shot range reproduces the same bits.
void sample_channel_model_range(const ChannelModel &model, uint64_t seed, size_t first_shot,
                                size_t count, ShotBatch &out, size_t row0);

ShotBatch sample_channel_model(const ChannelModel &model, uint64_t seed, size_t num_shots);

/// Samples a collapsed model with every mechanism as an independent coin
/// (mechanism-major scan, one stream per mechanism).
ShotBatch sample_dem(const DetectorErrorModel &dem, uint64_t seed, size_t num_shots);

}  // namespace bellsim

#endif
