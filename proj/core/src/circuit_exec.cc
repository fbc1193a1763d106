#include "bellsim/circuit_exec.h"

#include <fmt/format.h>

#include <stdexcept>

namespace bellsim {

namespace {

bool op_targets_are_pairs(OpType type) {
    return type == OpType::CNOT || type == OpType::CZ || type == OpType::BELL ||
           type == OpType::DEPOL2;
}

void apply_forced_fault(StabilizerTableau &tab, const Circuit &circuit, const ForcedFault &fault,
                        std::vector<MeasureResult> &records, size_t record_base) {
    const Operation &op = circuit.ops[fault.op_index];
    if (fault.flip_record) {
        if (!op_is_measurement(op.type)) {
            throw std::invalid_argument("record flip fault on a non-measurement");
        }
        size_t index = record_base + (op.type == OpType::MPP ? 0 : fault.target_index);
        records.at(index).value ^= true;
    }
    if (fault.pauli_a == 0 && fault.pauli_b == 0) {
        return;
    }
    PauliString p(circuit.num_qubits);
    if (op_targets_are_pairs(op.type)) {
        uint32_t qa = op.targets.at(2 * fault.target_index);
        uint32_t qb = op.targets.at(2 * fault.target_index + 1);
        if (fault.pauli_a) {
            p.set_letter(qa, pauli_letter_code(fault.pauli_a));
        }
        if (fault.pauli_b) {
            p.set_letter(qb, pauli_letter_code(fault.pauli_b));
        }
    } else {
        if (fault.pauli_b) {
            throw std::invalid_argument("two-qubit fault on a single-qubit operation");
        }
        p.set_letter(op.targets.at(fault.target_index), pauli_letter_code(fault.pauli_a));
    }
    tab.apply_pauli(p);
}

}  // namespace

CircuitRun run_symbolic(const Circuit &circuit, const std::vector<ForcedFault> &faults) {
    circuit.validate();
    StabilizerTableau tab(circuit.num_qubits);
    tab.symbolic = true;
    CircuitRun run;

    std::vector<std::vector<const ForcedFault *>> faults_at(circuit.ops.size());
    for (const auto &fault : faults) {
        if (fault.op_index >= circuit.ops.size()) {
            throw std::invalid_argument("forced fault past the end of the circuit");
        }
        faults_at[fault.op_index].push_back(&fault);
    }

    for (size_t i = 0; i < circuit.ops.size(); i++) {
        const Operation &op = circuit.ops[i];
        size_t record_base = run.records.size();
        switch (op.type) {
            case OpType::RZ:
                for (uint32_t q : op.targets) {
                    tab.reset_z(q, nullptr);
                }
                break;
            case OpType::RX:
                for (uint32_t q : op.targets) {
                    tab.reset_x(q, nullptr);
                }
                break;
            case OpType::H:
                for (uint32_t q : op.targets) {
                    tab.apply_h(q);
                }
                break;
            case OpType::S:
                for (uint32_t q : op.targets) {
                    tab.apply_s(q);
                }
                break;
            case OpType::CNOT:
                for (size_t j = 0; j < op.targets.size(); j += 2) {
                    tab.apply_cnot(op.targets[j], op.targets[j + 1]);
                }
                break;
            case OpType::CZ:
                for (size_t j = 0; j < op.targets.size(); j += 2) {
                    tab.apply_cz(op.targets[j], op.targets[j + 1]);
                }
                break;
            case OpType::BELL:
                for (size_t j = 0; j < op.targets.size(); j += 2) {
                    tab.prepare_bell(op.targets[j], op.targets[j + 1], nullptr);
                }
                break;
            case OpType::MZ:
                for (uint32_t q : op.targets) {
                    run.records.push_back(tab.measure_z(q, nullptr));
                }
                break;
            case OpType::MX:
                for (uint32_t q : op.targets) {
                    run.records.push_back(tab.measure_x(q, nullptr));
                }
                break;
            case OpType::MPP: {
                PauliString p(circuit.num_qubits);
                for (size_t j = 0; j < op.targets.size(); j++) {
                    p.set_letter(op.targets[j], pauli_letter_code(op.pauli[j]));
                }
                run.records.push_back(tab.measure(p, nullptr));
                break;
            }
            case OpType::DEPOL1:
            case OpType::DEPOL2:
            case OpType::FLIPX:
            case OpType::FLIPZ:
            case OpType::TICK:
                break;
            case OpType::DETECTOR:
            case OpType::OBSERVABLE: {
                bool value = false;
                SparseParity symbols;
                for (uint32_t r : op.records) {
                    value ^= run.records[r].value;
                    symbols.xor_with(run.records[r].symbols);
                }
                bool deterministic = symbols.ids.empty();
                if (op.type == OpType::DETECTOR) {
                    run.detector_deterministic.push_back(deterministic);
                    run.detector_values.push_back(value);
                    run.detector_basis.push_back(op.basis);
                } else {
                    run.observable_deterministic.push_back(deterministic);
                    run.observable_values.push_back(value);
                }
                break;
            }
        }
        for (const ForcedFault *fault : faults_at[i]) {
            apply_forced_fault(tab, circuit, *fault, run.records, record_base);
        }
    }
    return run;
}

void check_circuit_deterministic(const Circuit &circuit) {
    CircuitRun run = run_symbolic(circuit);
    for (size_t i = 0; i < run.detector_deterministic.size(); i++) {
        if (!run.detector_deterministic[i]) {
            throw std::logic_error(fmt::format("detector {} depends on measurement randomness", i));
        }
        if (run.detector_values[i]) {
            throw std::logic_error(fmt::format("detector {} fires without any fault", i));
        }
    }
    auto names = circuit.observable_names();
    for (size_t i = 0; i < run.observable_deterministic.size(); i++) {
        if (!run.observable_deterministic[i]) {
            throw std::logic_error(
                fmt::format("observable '{}' depends on measurement randomness", names[i]));
        }
        if (run.observable_values[i]) {
            throw std::logic_error(fmt::format("observable '{}' flips without any fault", names[i]));
        }
    }
}

}  // namespace bellsim
