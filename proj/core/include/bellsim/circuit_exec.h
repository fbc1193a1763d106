#ifndef BELLSIM_CIRCUIT_EXEC_H
#define BELLSIM_CIRCUIT_EXEC_H

#include <vector>

#include "bellsim/circuit.h"
#include "bellsim/tableau.h"

namespace bellsim {

/// A Pauli (or record flip) injected at a specific operation site during an
/// otherwise noiseless run. For pair ops, target_index selects the pair and
/// pauli_a/pauli_b act on its first/second qubit; 0 means identity.
struct ForcedFault {
    size_t op_index = 0;
    size_t target_index = 0;
    char pauli_a = 0;
    char pauli_b = 0;
    bool flip_record = false;
};

struct CircuitRun {
    std::vector<MeasureResult> records;
    std::vector<char> detector_deterministic;
    std::vector<char> detector_values;
    std::vector<char> detector_basis;
    std::vector<char> observable_deterministic;
    std::vector<char> observable_values;
};

/// Stabilizer simulation with symbolic random outcomes: detectors and
/// observables come back flagged deterministic when their value does not
/// depend on any measurement randomness. Noise channels act as identity
/// unless a forced fault names them.
CircuitRun run_symbolic(const Circuit &circuit, const std::vector<ForcedFault> &faults = {});

/// Throws std::logic_error if any detector or observable is random or any
/// detector fires in the fault-free circuit.
void check_circuit_deterministic(const Circuit &circuit);

}  // namespace bellsim

#endif
