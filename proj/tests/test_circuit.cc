#include "bellsim/circuit.h"

#include <gtest/gtest.h>

#include "bellsim/circuit_exec.h"

using namespace bellsim;

namespace {

const char *kSmallCircuit = R"(QUBITS 4
RZ 0 1
RX 2
BELL 0 3
H 2
S 2
CNOT 0 1
CZ 1 2
E_DEPOL1(0.001) 0 1
E_DEPOL2(0.002) 0 1
E_FLIPX(0.001) 2
E_FLIPZ(0.001) 3
TICK
MZ(0.001) 0 1
MX 2
MPP(0.003) X0*Z1
DETECTOR(Z, 0, 1) rec[0] rec[1]
OBSERVABLE(xx) rec[2] rec[3]
)";

}  // namespace

TEST(Circuit, TextRoundTrip) {
    Circuit c = Circuit::from_text(kSmallCircuit);
    EXPECT_EQ(c.num_qubits, 4u);
    EXPECT_EQ(c.num_measurements(), 4u);
    EXPECT_EQ(c.num_detectors(), 1u);
    EXPECT_EQ(c.num_observables(), 1u);
    EXPECT_EQ(c.observable_names(), std::vector<std::string>{"xx"});

    std::string printed = c.str();
    Circuit again = Circuit::from_text(printed);
    EXPECT_EQ(again, c);
    EXPECT_EQ(again.str(), printed);
}

TEST(Circuit, CommentsAndBlanksIgnored) {
    Circuit c = Circuit::from_text("# header\nQUBITS 2\n\nH 0  # trailing\n  \nMZ 0\n");
    EXPECT_EQ(c.ops.size(), 2u);
    EXPECT_EQ(c.ops[0].type, OpType::H);
}

TEST(Circuit, ParseErrorsCarryLineNumbers) {
    try {
        Circuit::from_text("QUBITS 2\nH 0\nWOBBLE 1\n");
        FAIL() << "expected parse failure";
    } catch (const std::invalid_argument &ex) {
        EXPECT_NE(std::string(ex.what()).find("line 3"), std::string::npos);
    }
    EXPECT_THROW(Circuit::from_text("H 0\n"), std::invalid_argument);
    EXPECT_THROW(Circuit::from_text("QUBITS 2\nMZ(1.5) 0\n"), std::invalid_argument);
    EXPECT_THROW(Circuit::from_text("QUBITS 2\nDETECTOR(Z) rec[0]\n"), std::invalid_argument);
    EXPECT_THROW(Circuit::from_text("QUBITS 2\nCNOT 0\n"), std::invalid_argument);
    EXPECT_THROW(Circuit::from_text("QUBITS 2\nCNOT 1 1\n"), std::invalid_argument);
    EXPECT_THROW(Circuit::from_text("QUBITS 2\nH 5\n"), std::invalid_argument);
    EXPECT_THROW(Circuit::from_text("QUBITS 2\nMPP X0*X0\n"), std::invalid_argument);
}

TEST(CircuitExec, BellPairDetectorsAreDeterministic) {
    Circuit c = Circuit::from_text(R"(QUBITS 2
BELL 0 1
MPP Z0*Z1
MPP X0*X1
MZ 0 1
DETECTOR(Z) rec[0]
DETECTOR(X) rec[1]
DETECTOR(Z) rec[2] rec[3]
OBSERVABLE(zz) rec[0]
)");
    check_circuit_deterministic(c);
    CircuitRun run = run_symbolic(c);
    ASSERT_EQ(run.detector_values.size(), 3u);
    EXPECT_TRUE(run.records[2].random);
    EXPECT_FALSE(run.records[2].symbols.empty());
}

TEST(CircuitExec, ForcedPauliFlipsDetectors) {
    Circuit c = Circuit::from_text(R"(QUBITS 1
RZ 0
E_DEPOL1(0.001) 0
MZ 0
DETECTOR(Z) rec[0]
)");
    CircuitRun clean = run_symbolic(c);
    EXPECT_EQ(clean.detector_values[0], 0);

    ForcedFault fault;
    fault.op_index = 1;
    fault.pauli_a = 'X';
    CircuitRun flipped = run_symbolic(c, {fault});
    EXPECT_EQ(flipped.detector_values[0], 1);

    fault.pauli_a = 'Z';
    CircuitRun dephased = run_symbolic(c, {fault});
    EXPECT_EQ(dephased.detector_values[0], 0);
}

TEST(CircuitExec, ForcedRecordFlip) {
    Circuit c = Circuit::from_text(R"(QUBITS 2
RZ 0 1
MZ(0.01) 0 1
DETECTOR(Z) rec[0]
DETECTOR(Z) rec[1]
)");
    ForcedFault fault;
    fault.op_index = 1;
    fault.target_index = 1;
    fault.flip_record = true;
    CircuitRun run = run_symbolic(c, {fault});
    EXPECT_EQ(run.detector_values[0], 0);
    EXPECT_EQ(run.detector_values[1], 1);
}

TEST(CircuitExec, TwoQubitFaultOnGate) {
    // A Z fault on the control of a CNOT propagates to nothing downstream in
    // Z basis records; an X fault on the control reaches both qubits.
    Circuit c = Circuit::from_text(R"(QUBITS 2
RZ 0 1
E_DEPOL2(0.01) 0 1
CNOT 0 1
MZ 0 1
DETECTOR(Z) rec[0]
DETECTOR(Z) rec[1]
)");
    ForcedFault fault;
    fault.op_index = 1;
    fault.pauli_a = 'X';
    CircuitRun run = run_symbolic(c, {fault});
    EXPECT_EQ(run.detector_values[0], 1);
    EXPECT_EQ(run.detector_values[1], 1);

    fault.pauli_a = 0;
    fault.pauli_b = 'X';
    run = run_symbolic(c, {fault});
    EXPECT_EQ(run.detector_values[0], 0);
    EXPECT_EQ(run.detector_values[1], 1);

    fault.pauli_a = 'Y';
    fault.pauli_b = 'Y';
    run = run_symbolic(c, {fault});
    EXPECT_EQ(run.detector_values[0], 1);
    EXPECT_EQ(run.detector_values[1], 0);
}

TEST(CircuitExec, CheckRejectsRandomDetector) {
    Circuit c = Circuit::from_text(R"(QUBITS 1
H 0
MZ 0
DETECTOR(Z) rec[0]
)");
    EXPECT_THROW(check_circuit_deterministic(c), std::logic_error);
}

TEST(CircuitExec, CheckRejectsFiringDetector) {
    Circuit c = Circuit::from_text(R"(QUBITS 1
RZ 0
H 0
H 0
MX 0
DETECTOR(X) rec[0]
)");
    // |0> -> H H -> |0>, measured in X: random, so use a state that fires.
    Circuit firing = Circuit::from_text(R"(QUBITS 1
RX 0
S 0
S 0
MX 0
DETECTOR(X) rec[0]
)");
    EXPECT_THROW(check_circuit_deterministic(c), std::logic_error);
    EXPECT_THROW(check_circuit_deterministic(firing), std::logic_error);
}
