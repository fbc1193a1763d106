#ifndef BELLSIM_CIRCUIT_H
#define BELLSIM_CIRCUIT_H

#include <cstdint>
#include <string>
#include <vector>

namespace bellsim {

enum class OpType : uint8_t {
    RZ,          // reset to |0>
    RX,          // reset to |+>
    H,
    S,
    CNOT,        // targets are (control, target) pairs
    CZ,          // targets are pairs
    BELL,        // ideal Bell pair on (a, b) pairs
    MZ,          // one record per target; arg = record flip probability
    MX,
    MPP,         // joint Pauli product measurement, one record; pauli[i] acts on targets[i]
    DEPOL1,      // X/Y/Z each with arg/3
    DEPOL2,      // 15 two-qubit Paulis each with arg/15, on pairs
    FLIPX,       // X with probability arg
    FLIPZ,       // Z with probability arg
    TICK,
    DETECTOR,    // parity of referenced records; basis tag + optional coords
    OBSERVABLE,  // named parity of referenced records
};

const char *op_name(OpType type);

struct Operation {
    OpType type;
    std::vector<uint32_t> targets;
    double arg = 0.0;
    std::string pauli;              // MPP letters, one per target
    std::vector<uint32_t> records;  // absolute measurement indices
    char basis = 0;                 // DETECTOR tag: 'X' or 'Z'
    std::vector<double> coords;     // DETECTOR metadata
    std::string name;               // OBSERVABLE label

    bool operator==(const Operation &other) const;
    std::string str() const;
};

/// Flat Pauli-frame circuit. Measurements are numbered 0,1,2,... in program
/// order (each MZ/MX target is one record, each MPP is one record) and
/// detectors/observables reference those absolute indices, which must already
/// exist at the point of reference.
struct Circuit {
    size_t num_qubits = 0;
    std::vector<Operation> ops;

    size_t num_measurements() const;
    size_t num_detectors() const;
    size_t num_observables() const;
    std::vector<std::string> observable_names() const;

    /// Throws std::invalid_argument on malformed operations.
    void validate() const;

    std::string str() const;
    static Circuit from_text(const std::string &text);

    bool operator==(const Circuit &other) const;

    // Construction helpers used by circuit builders.
    Operation &append(OpType type, std::vector<uint32_t> targets, double arg = 0.0);
    void append_detector(char basis, std::vector<uint32_t> records, std::vector<double> coords = {});
    void append_observable(std::string name, std::vector<uint32_t> records);
};

bool op_is_measurement(OpType type);
bool op_is_noise(OpType type);
/// Records produced by one instance of this operation (MZ/MX: per target).
size_t op_records_per_target(OpType type);

}  // namespace bellsim

#endif
