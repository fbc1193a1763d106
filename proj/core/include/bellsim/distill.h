#ifndef BELLSIM_DISTILL_H
#define BELLSIM_DISTILL_H

#include <cstdint>
#include <utility>
#include <vector>

#include "bellsim/standard_form.h"

namespace bellsim {

struct DistillCnot {
    uint32_t control = 0;
    uint32_t target = 0;
    int stage = 1;
};

/// Unencoding circuit of a CSS code, used as a Bell-pair distillation routine:
/// both nodes run the same gates on their halves of n shared pairs, compare
/// the listed measurement records, and keep the k output pairs when all
/// records agree.
struct LogicalDistillationCircuit {
    size_t n = 0;
    size_t k = 0;
    size_t r = 0;
    std::vector<DistillCnot> cnots;    // stage-1 block first, then stage-2
    std::vector<uint32_t> x_measured;  // read in the X basis
    std::vector<uint32_t> z_measured;  // read in the Z basis
    std::vector<uint32_t> outputs;     // surviving pairs
};

LogicalDistillationCircuit synthesize_distillation(const StandardFormResult &sf);

/// One reconfiguration step: every listed patch shifts one slot in the common
/// direction, then the listed transversal CNOTs act between now-adjacent
/// patches.
struct PipelineStep {
    int direction = 1;
    std::vector<uint32_t> moved;
    std::vector<std::pair<uint32_t, uint32_t>> cnots;  // (control, target)
};

struct PipelineSchedule {
    size_t n = 0;
    size_t k = 0;
    size_t r = 0;
    std::vector<PipelineStep> steps;
    /// Per-qubit lifetime in transversal-gate layers charged by the volume
    /// model: outputs stay for n-k layers, movers for n-r, the rest for n-1.
    std::vector<size_t> layer_budget;
};

PipelineSchedule schedule_pipeline(const LogicalDistillationCircuit &c);

/// What a given input-side Pauli pattern does to the protocol.
struct PatternFate {
    bool detected = false;         // some compared record disagrees
    bool corrupts_output = false;  // an output pair observable is flipped
};

/// Propagates Pauli letters placed on one node's inputs through the ideal
/// circuit. pattern entries are (qubit, letter) with letter in {X,Y,Z}.
PatternFate propagate_error_pattern(const LogicalDistillationCircuit &c,
                                    const std::vector<std::pair<uint32_t, char>> &pattern);

struct DistillationPerformance {
    size_t n = 0;
    size_t k = 0;
    int max_weight = 0;
    /// Smallest weight of an accepted pattern that corrupts an output, or 0
    /// when none exists up to max_weight.
    int leading_weight = 0;
    std::vector<size_t> accepted_by_weight;   // patterns passing postselection
    std::vector<size_t> logical_by_weight;    // accepted and corrupting
    /// Summed number of corrupted output pairs over the accepted patterns of
    /// each weight.
    std::vector<size_t> corrupted_pairs_by_weight;
    /// Taylor coefficients of the acceptance probability in the input error
    /// rate, exact through order max_weight.
    std::vector<double> success_poly;
    double success_probability = 0.0;  // evaluated at the requested rate
    /// c in the per-output-pair error rate c * p^leading_weight: the average
    /// corrupted-pair count per accepted leading-weight pattern, over the
    /// pattern probability prefactor.
    double output_error_leading = 0.0;
};

/// Exact enumeration of all one-sided input error patterns up to max_weight,
/// each qubit suffering X, Y or Z with probability p_in/3.
DistillationPerformance analyze_distillation(const LogicalDistillationCircuit &c, double p_in,
                                             int max_weight);

/// The [[2m, 2m-2, 2]] parity-code protocol.
DistillationPerformance analyze_parity_distillation(int m, double p_in, int max_weight = 3);

/// One level of a concatenated distillation sequence. Rates and volumes are
/// caller-supplied; this module only composes them.
struct ConcatStage {
    double inputs = 1.0;   // pairs consumed per attempt
    double outputs = 1.0;  // pairs produced per successful attempt
    double success = 1.0;
    double volume = 0.0;  // local spacetime volume per attempt
    double p_out = 0.0;   // error rate of this stage's outputs
};

struct ConcatResult {
    double inverse_yield = 1.0;  // physical pairs per final output pair
    double p_out = 0.0;
    double v_factory = 0.0;
    double v_buffer = 0.0;
    double v_total = 0.0;
};

/// Walks the sequence back to front, multiplying retry factors into the
/// demand on each level, and adds the accumulation cost of the physical
/// inputs at the given pair throughput.
ConcatResult evaluate_concat_sequence(const std::vector<ConcatStage> &stages, double throughput);

}  // namespace bellsim

#endif
