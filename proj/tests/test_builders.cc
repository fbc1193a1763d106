#include "bellsim/builders.h"

#include <gtest/gtest.h>

#include "bellsim/circuit_exec.h"

namespace bellsim {
namespace {

size_t count_fired(const CircuitRun &run, char basis = 0) {
    size_t fired = 0;
    for (size_t i = 0; i < run.detector_values.size(); ++i) {
        EXPECT_TRUE(run.detector_deterministic[i]);
        if (run.detector_values[i] && (basis == 0 || run.detector_basis[i] == basis)) {
            fired++;
        }
    }
    return fired;
}

TEST(BoostingBuilder, DeterministicAcrossSizes) {
    struct Case {
        int d_bell, d_s, rounds;
    };
    for (Case c : {Case{1, 2, 2}, {1, 3, 1}, {2, 3, 0}, {3, 3, 3}, {2, 5, 3}, {5, 5, 3}}) {
        BoostingSpec spec;
        spec.d_bell = c.d_bell;
        spec.d_s = c.d_s;
        spec.rounds = c.rounds;
        BoostingCircuit built = build_boosting_circuit(spec);
        EXPECT_NO_THROW(check_circuit_deterministic(built.circuit))
            << "d_bell=" << c.d_bell << " d_s=" << c.d_s;
    }
}

TEST(BoostingBuilder, StructuralCounts) {
    BoostingSpec spec;
    spec.d_bell = 2;
    spec.d_s = 3;
    spec.rounds = 4;
    BoostingCircuit built = build_boosting_circuit(spec);
    EXPECT_EQ(built.bell_pairs, 4u);
    EXPECT_EQ(built.layout.plaquettes.size(), 8u);

    const Circuit &c = built.circuit;
    EXPECT_EQ(c.num_observables(), 2u);
    EXPECT_EQ(c.observable_names(), (std::vector<std::string>{"xx", "zz"}));
    // 5 noisy+noiseless rounds of 16 ancillas, plus the two joint logicals.
    EXPECT_EQ(c.num_measurements(), 5u * 16u + 2u);
    // Round 1 keeps the five checks seeded deterministically (two of them
    // per-node), later rounds compare consecutive outcomes on both nodes.
    EXPECT_EQ(c.num_detectors(), 5u + 4u * 16u);
}

TEST(BoostingBuilder, SeedFaultsHitTheRightDetectors) {
    BoostingSpec spec;
    spec.d_bell = 2;
    spec.d_s = 3;
    spec.rounds = 2;
    spec.noise.p = 0;
    spec.noise.p_bell = 0;
    BoostingCircuit built = build_boosting_circuit(spec);
    const Circuit &c = built.circuit;
    ASSERT_EQ(c.ops[0].type, OpType::BELL);
    ASSERT_EQ(c.ops[1].type, OpType::RX);
    ASSERT_EQ(c.ops[2].type, OpType::RZ);

    // X on the |0>-seeded qubit (0,2) of node A: one Z check covers it, and it
    // crosses the joint Z logical on the top row.
    CircuitRun run = run_symbolic(c, {{2, 0, 'X', 0, false}});
    EXPECT_EQ(count_fired(run), 1u);
    EXPECT_EQ(count_fired(run, 'Z'), 1u);
    EXPECT_FALSE(run.observable_values[0]);
    EXPECT_TRUE(run.observable_values[1]);

    // Z on the |+>-seeded qubit (2,0) of node B: one per-node X check covers
    // it, and it crosses the joint X logical on the left column.
    run = run_symbolic(c, {{1, 1, 'Z', 0, false}});
    EXPECT_EQ(count_fired(run), 1u);
    EXPECT_EQ(count_fired(run, 'X'), 1u);
    EXPECT_TRUE(run.observable_values[0]);
    EXPECT_FALSE(run.observable_values[1]);
}

TEST(BoostingBuilder, IdleNoiseKeepsDeterminism) {
    BoostingSpec spec;
    spec.d_bell = 2;
    spec.d_s = 3;
    spec.rounds = 2;
    spec.noise.idle = 1e-4;
    BoostingCircuit built = build_boosting_circuit(spec);
    size_t idle_ops = 0;
    for (const Operation &op : built.circuit.ops) {
        idle_ops += op.type == OpType::DEPOL1 && op.arg == spec.noise.idle;
    }
    EXPECT_GT(idle_ops, 0u);
    EXPECT_NO_THROW(check_circuit_deterministic(built.circuit));
}

TEST(BoostingBuilder, RejectsBadShapes) {
    BoostingSpec spec;
    spec.d_bell = 4;
    spec.d_s = 3;
    EXPECT_THROW(build_boosting_circuit(spec), std::invalid_argument);
    spec.d_bell = 0;
    EXPECT_THROW(build_boosting_circuit(spec), std::invalid_argument);
}

TEST(SurgeryBuilder, DeterministicAcrossSizes) {
    struct Case {
        int d_s, rounds;
    };
    for (Case c : {Case{3, 1}, {3, 0}, {5, 0}, {7, 2}}) {
        SurgerySpec spec;
        spec.d_s = c.d_s;
        spec.rounds = c.rounds;
        SurgeryCircuit built = build_surgery_circuit(spec);
        EXPECT_NO_THROW(check_circuit_deterministic(built.circuit)) << "d_s=" << c.d_s;
    }
}

TEST(SurgeryBuilder, StructuralCounts) {
    SurgerySpec spec;
    spec.d_s = 3;
    spec.rounds = 3;
    SurgeryCircuit built = build_surgery_circuit(spec);
    EXPECT_EQ(built.crossings_per_round, 5u);
    EXPECT_EQ(built.bell_pairs, 15u);

    const Circuit &c = built.circuit;
    EXPECT_EQ(c.num_observables(), 2u);
    EXPECT_EQ(c.observable_names(), (std::vector<std::string>{"xx", "zz"}));
    // Per merged round: 20 ancillas plus two byproduct reads per interface
    // gate; then the seam column, the split readout round, and two logicals.
    EXPECT_EQ(c.num_measurements(), 3u * (20u + 10u) + 3u + 16u + 2u);
    // Round 1 fixes the 8 Z checks, rounds 2..3 all 20, split readout 16.
    EXPECT_EQ(c.num_detectors(), 8u + 2u * 20u + 16u);

    // The folded byproduct corrections must show up somewhere: consecutive
    // detectors nominally hold two records, interface ones more.
    size_t widened = 0;
    for (const Operation &op : c.ops) {
        widened += op.type == OpType::DETECTOR && op.records.size() > 2;
    }
    EXPECT_GT(widened, 0u);
}

TEST(SurgeryBuilder, SeamFaultsHitTheRightDetectors) {
    SurgerySpec spec;
    spec.d_s = 3;
    spec.rounds = 3;
    spec.noise.p = 0;
    spec.noise.p_bell = 0;
    SurgeryCircuit built = build_surgery_circuit(spec);
    const Circuit &c = built.circuit;
    ASSERT_EQ(c.ops[0].type, OpType::RZ);

    // X on seam qubit (1,3) at seeding: two bulk Z checks see it every round,
    // and its flipped seam readout cancels inside the split detectors.
    CircuitRun run = run_symbolic(c, {{0, 10, 'X', 0, false}});
    EXPECT_EQ(count_fired(run), 2u);
    EXPECT_EQ(count_fired(run, 'Z'), 2u);
    EXPECT_FALSE(run.observable_values[0]);
    EXPECT_FALSE(run.observable_values[1]);

    // X on seam qubit (0,3): one Z check sees it, and the flipped seam
    // readout carries into the joint ZZ outcome.
    run = run_symbolic(c, {{0, 3, 'X', 0, false}});
    EXPECT_EQ(count_fired(run), 1u);
    EXPECT_EQ(count_fired(run, 'Z'), 1u);
    EXPECT_FALSE(run.observable_values[0]);
    EXPECT_TRUE(run.observable_values[1]);
}

TEST(SurgeryBuilder, IdleNoiseKeepsDeterminism) {
    SurgerySpec spec;
    spec.d_s = 3;
    spec.rounds = 2;
    spec.noise.idle = 1e-4;
    SurgeryCircuit built = build_surgery_circuit(spec);
    EXPECT_NO_THROW(check_circuit_deterministic(built.circuit));
}

TEST(SurgeryBuilder, RejectsBadShapes) {
    SurgerySpec spec;
    spec.d_s = 4;
    EXPECT_THROW(build_surgery_circuit(spec), std::invalid_argument);
    spec.d_s = 1;
    EXPECT_THROW(build_surgery_circuit(spec), std::invalid_argument);
}

}  // namespace
}  // namespace bellsim
