#ifndef BELLSIM_EXPERIMENT_H
#define BELLSIM_EXPERIMENT_H

#include <cstdint>
#include <string>
#include <vector>

#include "bellsim/circuit.h"
#include "bellsim/decoder.h"
#include "bellsim/fit.h"

namespace bellsim {

/// One decoded shot: gap scores plus predicted and true logical flips.
struct ShotOutcome {
    int64_t gap_x = 0;
    int64_t gap_z = 0;
    int64_t gap = 0;
    uint8_t pred_xx = 0;
    uint8_t pred_zz = 0;
    uint8_t true_xx = 0;
    uint8_t true_zz = 0;
};

struct CampaignResult {
    std::vector<ShotOutcome> shots;
    size_t errors_xx = 0;
    size_t errors_zz = 0;
    size_t errors_any = 0;  // wrong in either basis
};

/// Samples the circuit's collapsed error model and decodes every shot.
/// Slices of 1024 shots are handed to `workers` threads; sampling streams
/// are keyed by absolute shot index and every slice writes its own rows, so
/// the result is identical for any worker count.
CampaignResult run_decode_campaign(const Circuit &circuit, size_t shots, uint64_t seed,
                                   int workers = 1);

/// Error statistics among the shots whose gap clears the threshold.
struct PostselectionPoint {
    int64_t threshold = 0;
    size_t kept = 0;
    size_t errors = 0;
    double acceptance = 1;
    double p_l = 0;
    double std_err = 0;
};

PostselectionPoint postselect(const CampaignResult &res, int64_t threshold);
std::vector<PostselectionPoint> postselection_curve(const CampaignResult &res,
                                                    const std::vector<int64_t> &thresholds);

/// Smallest sampled gap value whose acceptance rate is <= 1 - discard: the
/// gap-grid quantile used to target a discard fraction.
int64_t gap_quantile(const CampaignResult &res, double discard);

std::string campaign_csv(const CampaignResult &res);
std::string postselection_csv(const std::vector<PostselectionPoint> &points);

/// Where the error curves of two distances cross in p_bell, by linear
/// interpolation of log p_l between sampled points.
struct CurveCrossing {
    int d_a = 0;
    int d_b = 0;
    double p_bell = 0;
};

/// Crossing estimates for every consecutive pair of distances present in the
/// samples. All curves must share the same p_bell grid.
std::vector<CurveCrossing> estimate_curve_crossings(const std::vector<SurgerySample> &points);

}  // namespace bellsim

#endif
