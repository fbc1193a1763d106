#ifndef BELLSIM_DECODER_H
#define BELLSIM_DECODER_H

#include <cstdint>
#include <vector>

#include "bellsim/error_model.h"
#include "bellsim/sampler.h"

namespace bellsim {

/// Matching graph over the detectors of one stabilizer family.
///
/// Error mechanisms are folded into weighted edges; mechanisms touching more
/// than two same-family detectors are decomposed into edges that already exist
/// on their own, and the construction throws if that fails. Each edge carries
/// the flip bit of the observable this family predicts. Side potentials split
/// the boundary into the two logical classes, so a decode can be forced into
/// either class and the weight difference between the classes read off.
class DecodingGraph {
  public:
    DecodingGraph(const DetectorErrorModel &dem, char basis, uint32_t observable);

    char basis() const { return basis_; }
    uint32_t observable() const { return observable_; }
    size_t num_nodes() const { return detectors_.size(); }
    size_t num_bulk_edges() const { return num_bulk_edges_; }
    size_t num_boundary_edges() const { return num_boundary_edges_; }
    /// Weight of the cheapest defect-free chain connecting the two boundary
    /// classes, i.e. the distance floor of the circuit in this family.
    int64_t crossing_weight() const { return w_cross_; }
    const std::vector<uint32_t> &detectors() const { return detectors_; }

    /// Node indices of the fired detectors of this family in one shot.
    std::vector<uint32_t> defects(const ShotBatch &batch, size_t shot) const;

    /// Minimum matching weight with the predicted observable forced to `cls`.
    int64_t forced_weight(const std::vector<uint32_t> &defect_nodes, int cls) const;

    struct Decode {
        int predicted = 0;
        int64_t weight0 = 0;   // best explanation with observable = 0
        int64_t weight1 = 0;   // best explanation with observable = 1
        int64_t gap = 0;       // |weight1 - weight0|, scaled log-likelihood units
    };
    Decode decode(const std::vector<uint32_t> &defect_nodes) const;

  private:
    char basis_;
    uint32_t observable_;
    size_t num_bulk_edges_ = 0;
    size_t num_boundary_edges_ = 0;
    std::vector<uint32_t> detectors_;       // DEM detector ids, ascending
    std::vector<int> node_of_;              // DEM detector id -> node, -1 elsewhere
    std::vector<char> phi_;                 // per node: side potential
    std::vector<int> component_;            // per node: connected component
    std::vector<int64_t> dist_;             // bulk all-pairs distances, n*n
    std::vector<int64_t> dist_l_, dist_r_;  // cheapest attachment per class
    int64_t w_cross_ = 0;
    size_t n_ = 0;

    int64_t pair_weight(uint32_t u, uint32_t v) const;
};

/// Per-shot outcome of decoding both stabilizer families, with the
/// complementary gap used for postselection.
struct ShotDecode {
    int pred_xx = 0;
    int pred_zz = 0;
    int64_t gap_x = 0;
    int64_t gap_z = 0;
    int64_t gap = 0;  // min(gap_x, gap_z)
};

class GapDecoder {
  public:
    explicit GapDecoder(const DetectorErrorModel &dem);

    const DecodingGraph &x_graph() const { return x_; }
    const DecodingGraph &z_graph() const { return z_; }

    ShotDecode decode(const ShotBatch &batch, size_t shot) const;

  private:
    DecodingGraph x_;
    DecodingGraph z_;
};

}  // namespace bellsim

#endif
