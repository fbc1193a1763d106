#ifndef BELLSIM_COST_H
#define BELLSIM_COST_H

#include <cstddef>

namespace bellsim {

/// Link-limited volume split into Bell-pair buffering and local factory
/// work, in qubit-cycles, plus the physical-pairs-per-output yield.
struct CostReport {
    double v_buffer = 0;
    double v_factory = 0;
    double v_total = 0;
    double inverse_yield = 0;
};

/// Volume of one boosted logical Bell pair: d_bell^2 physical pairs buffered
/// at throughput R, expanded to a distance d_s patch, with the whole trial
/// repeated 1/q0 times on average under postselection.
CostReport llv_boosting(int d_bell, int d_s, double R, double q0);

/// Volume of one logical Bell pair made by merged-patch surgery, where
/// d_s(2d_s - 1) pairs feed the interface and only the shortfall against the
/// streaming rate R has to be buffered.
CostReport llv_surgery(int d_s, double R);

/// Patch-cycles of the pipelined distillation schedule for an [[n, k]] code
/// with r X-checks, in units of distance-d_s patches: the k outputs persist
/// for n-k steps, the r movers for n-r, and the middle patches for n-1.
double pipelined_volume(size_t n, size_t k, size_t r, int d_s);

}  // namespace bellsim

#endif
