#ifndef BELLSIM_COMPARE_H
#define BELLSIM_COMPARE_H

#include <string>
#include <utility>
#include <vector>

#include "bellsim/distill.h"
#include "bellsim/fit.h"

namespace bellsim {

/// One protocol evaluated at one throughput: the cheapest parameter choice
/// meeting the target, or feasible=false with infinite volumes when the
/// error model cannot reach it.
struct ProtocolChoice {
    std::string protocol;
    double R = 0;
    int d_bell = 0;      // 0 when the protocol has no boosting stage
    double discard = 0;  // postselection discard fraction (the gap threshold)
    double q0 = 1;       // acceptance rate, 1 - discard
    int m = 0;           // parity-code size of the distillation stage
    int d_s = 0;
    bool feasible = false;
    double p_out = 0;
    double inverse_yield = 0;
    double v_buffer = 0;
    double v_factory = 0;
    double v_total = 0;
};

/// Postselection ladder: discard fraction paired with the error scaling
/// fitted at that discard rate. The exponent grows with the discard
/// fraction while prefactor and threshold stay put.
std::vector<std::pair<double, BoostingModel>> default_boosting_ladder();

/// Externally supplied stage rates for the injection-and-purification
/// sequence (injection, [3,1,3]_X, [2,1,2]_Y, [2,1,2]_X, then the [[6,4,2]]
/// block), with volumes in d_s-patch qubit-cycles.
std::vector<ConcatStage> default_concat_stages(int d_s);

std::vector<double> default_r_grid();

struct CompareConfig {
    double p_bell = 0.01;
    double target_p_l = 1e-12;
    int d_s = 19;
    std::vector<double> r_grid = default_r_grid();
    std::vector<int> d_bell_grid = {3, 5, 7, 9, 11, 13, 15, 17};
    std::vector<int> m_grid = {2, 3, 4, 5, 6, 7, 8};
    std::vector<std::pair<double, BoostingModel>> boosting_models = default_boosting_ladder();
    SurgeryModel surgery;
    std::vector<ConcatStage> concat_stages = default_concat_stages(19);
};

/// Evaluates boosting-only, boosting+distillation, surgery (scanning odd
/// d_s up to 61), and the concatenated external sequence at every throughput
/// in the grid, minimizing total volume subject to the error target.
/// Returns four rows per R in that order.
std::vector<ProtocolChoice> compare_protocols(const CompareConfig &config);

/// CSV table of the choices, one row each, fixed column set.
std::string crossover_csv(const std::vector<ProtocolChoice> &choices);

}  // namespace bellsim

#endif
