#ifndef BELLSIM_MATCHING_H
#define BELLSIM_MATCHING_H

#include <cstdint>
#include <vector>

namespace bellsim {

/// Exact minimum-weight perfect matching on a complete graph, returned as a
/// partner index per vertex. Blossom algorithm with integer duals; the vertex
/// count must be even. Weights must be non-negative and small enough that
/// doubled sums fit in int64.
std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<int64_t>> &weight);

}  // namespace bellsim

#endif
