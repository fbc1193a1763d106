#ifndef BELLSIM_BUILDERS_H
#define BELLSIM_BUILDERS_H

#include <cstdint>

#include "bellsim/circuit.h"
#include "bellsim/surface_code.h"

namespace bellsim {

struct NoiseParams {
    /// Local circuit noise: two-qubit depolarizing after gates, flip noise
    /// after resets, record flips on measurements.
    double p = 1e-3;
    /// Depolarizing weight on the transmitted arm of every Bell pair.
    double p_bell = 0.05;
    /// Optional per-layer depolarizing on data qubits that sit out a CNOT
    /// layer. Off by default.
    double idle = 0.0;
};

struct BoostingSpec {
    /// Edge length of the square block of Bell pairs seeding each patch.
    int d_bell = 3;
    /// Edge length of the full surface code patch after expansion.
    int d_s = 3;
    /// Noisy syndrome measurement rounds; 0 means d_s.
    int rounds = 0;
    NoiseParams noise;
};

/// Two d_s x d_s patches, A and B, grown around a d_bell x d_bell block of
/// shared Bell pairs, plus a trailing noiseless readout round. The
/// observables "xx" and "zz" are the joint logicals whose flips are the
/// logical errors of the resulting logical Bell pair.
struct BoostingCircuit {
    Circuit circuit;
    int d_bell = 0;
    int d_s = 0;
    int rounds = 0;
    size_t bell_pairs = 0;
    SurfaceCodeLayout layout;  // one node's patch
    uint32_t data_a = 0, data_b = 0;  // qubit id bases
    uint32_t anc_a = 0, anc_b = 0;
};

BoostingCircuit build_boosting_circuit(const BoostingSpec &spec);

struct SurgerySpec {
    int d_s = 3;
    /// Noisy merged rounds between merge and split; 0 means d_s.
    int rounds = 0;
    NoiseParams noise;
};

/// A d_s x (2d_s+1) merged patch split across two nodes along a zig-zag
/// interface through the middle column. Syndrome CNOTs that straddle the cut
/// run as Bell-teleported gates; their byproduct corrections are folded into
/// the detector and observable definitions instead of being applied.
/// Measures the joint "xx" and "zz" outcomes of the merge-and-split.
struct SurgeryCircuit {
    Circuit circuit;
    int d_s = 0;
    int rounds = 0;
    size_t crossings_per_round = 0;
    size_t bell_pairs = 0;
    SurfaceCodeLayout merged;
};

SurgeryCircuit build_surgery_circuit(const SurgerySpec &spec);

}  // namespace bellsim

#endif
