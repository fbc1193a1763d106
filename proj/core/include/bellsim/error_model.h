#ifndef BELLSIM_ERROR_MODEL_H
#define BELLSIM_ERROR_MODEL_H

#include <cstdint>
#include <string>
#include <vector>

#include "bellsim/circuit.h"
#include "bellsim/sparse_parity.h"

namespace bellsim {

/// Observable ids share the symptom id space with detectors, offset by this.
constexpr uint32_t kObservableBase = 1u << 30;

/// One equally likely outcome of a noise channel: the Pauli (or record flip)
/// it applies, and the detectors/observables that flipping it would toggle.
struct ChannelCase {
    char pauli_a = 0;
    char pauli_b = 0;
    bool flip_record = false;
    SparseParity symptoms;
};

/// One independent noise event site: a single target (or pair) of one noise
/// operation, firing with `probability` and then picking a case uniformly.
struct NoiseChannel {
    size_t op_index = 0;
    size_t target_index = 0;  // target index, or pair index for pair ops
    double probability = 0.0;
    std::vector<ChannelCase> cases;
};

struct ChannelModel {
    size_t num_detectors = 0;
    size_t num_observables = 0;
    std::vector<NoiseChannel> channels;  // forward program order
};

/// Walks the circuit backwards tracking, for each qubit, which detectors and
/// observables an X or Z inserted at the current point would flip, and emits
/// one channel per noise site.
ChannelModel extract_channel_model(const Circuit &circuit);

struct ErrorMechanism {
    double probability = 0.0;
    std::vector<uint32_t> detectors;
    std::vector<uint32_t> observables;
};

/// Channel cases collapsed by symptom set: cases of one channel are exclusive
/// and add, distinct channels are independent and combine as
/// p <- p(1-q) + q(1-p). Mechanisms with no symptoms are dropped.
struct DetectorErrorModel {
    size_t num_detectors = 0;
    size_t num_observables = 0;
    std::vector<char> detector_basis;
    std::vector<std::vector<double>> detector_coords;
    std::vector<std::string> observable_names;
    std::vector<ErrorMechanism> mechanisms;
};

DetectorErrorModel collapse_to_dem(const ChannelModel &channels, const Circuit &circuit);
DetectorErrorModel build_detector_error_model(const Circuit &circuit);

std::string dem_to_text(const DetectorErrorModel &dem);

}  // namespace bellsim

#endif
