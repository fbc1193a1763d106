#include "bellsim/sampler.h"

#include <cmath>
#include <stdexcept>

#include "bellsim/rng.h"

namespace bellsim {

namespace {

struct ProbClass {
    double log1m = 0.0;
    std::vector<uint32_t> channels;
};

/// Channels bucketed by firing probability in first-seen order, so one
/// geometric scan per bucket covers them all.
std::vector<ProbClass> probability_classes(const ChannelModel &model) {
    std::vector<double> seen;
    std::vector<ProbClass> classes;
    for (uint32_t i = 0; i < model.channels.size(); ++i) {
        const double p = model.channels[i].probability;
        if (p <= 0) {
            continue;
        }
        size_t k = 0;
        while (k < seen.size() && seen[k] != p) {
            ++k;
        }
        if (k == seen.size()) {
            seen.push_back(p);
            classes.push_back({p < 1 ? std::log1p(-p) : -HUGE_VAL, {}});
        }
        classes[k].channels.push_back(i);
    }
    return classes;
}

}  // namespace

void sample_channel_model_range(const ChannelModel &model, uint64_t seed, size_t first_shot,
                                size_t count, ShotBatch &out, size_t row0) {
    if (row0 + count > out.num_shots) {
        throw std::invalid_argument("sample_channel_model_range: rows out of range");
    }
    const std::vector<ProbClass> classes = probability_classes(model);
    for (size_t s = 0; s < count; ++s) {
        ShotRng rng(seed, first_shot + s);
        const size_t row = row0 + s;
        for (const ProbClass &cls : classes) {
            uint64_t idx = rng.next_geometric_skip(cls.log1m);
            while (idx < cls.channels.size()) {
                const NoiseChannel &ch = model.channels[cls.channels[idx]];
                const ChannelCase &cs =
                    ch.cases.size() == 1
                        ? ch.cases[0]
                        : ch.cases[rng.next_below(uint32_t(ch.cases.size()))];
                for (uint32_t id : cs.symptoms.ids) {
                    out.toggle(row, id);
                }
                idx += 1 + rng.next_geometric_skip(cls.log1m);
            }
        }
    }
}

ShotBatch sample_channel_model(const ChannelModel &model, uint64_t seed, size_t num_shots) {
    ShotBatch out(num_shots, model.num_detectors, model.num_observables);
    sample_channel_model_range(model, seed, 0, num_shots, out, 0);
    return out;
}

ShotBatch sample_dem(const DetectorErrorModel &dem, uint64_t seed, size_t num_shots) {
    ShotBatch out(num_shots, dem.num_detectors, dem.num_observables);
    for (size_t m = 0; m < dem.mechanisms.size(); ++m) {
        const ErrorMechanism &mech = dem.mechanisms[m];
        if (mech.probability <= 0) {
            continue;
        }
        const double log1m = mech.probability < 1 ? std::log1p(-mech.probability) : -HUGE_VAL;
        ShotRng rng(seed ^ 0x94d049bb133111ebULL, m);
        uint64_t s = rng.next_geometric_skip(log1m);
        while (s < num_shots) {
            for (uint32_t d : mech.detectors) {
                out.toggle(s, d);
            }
            for (uint32_t j : mech.observables) {
                out.toggle(s, kObservableBase + j);
            }
            s += 1 + rng.next_geometric_skip(log1m);
        }
    }
    return out;
}

}  // namespace bellsim
