#include "bellsim/decoder.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>

#include <fmt/format.h>

#include "bellsim/matching.h"

namespace bellsim {

namespace {

// Anything at or above this is "unreachable"; small enough that sums over a
// full matching stay far from int64 overflow inside the matcher.
constexpr int64_t kUnreach = 10'000'000'000'000;

int64_t weight_of(double p) {
    if (p >= 0.5) return 1;
    return std::max<int64_t>(1, std::llround(std::log((1.0 - p) / p) * 1024.0));
}

void fold_probability(double &into, double q) { into = into * (1.0 - q) + q * (1.0 - into); }

using PairKey = std::pair<uint32_t, uint32_t>;

struct BulkEntry {
    double p = 0.0;
    int obs = 0;
};

}  // namespace

DecodingGraph::DecodingGraph(const DetectorErrorModel &dem, char basis, uint32_t observable)
    : basis_(basis), observable_(observable) {
    node_of_.assign(dem.num_detectors, -1);
    for (uint32_t d = 0; d < dem.num_detectors; ++d) {
        if (dem.detector_basis[d] == basis) {
            node_of_[d] = static_cast<int>(detectors_.size());
            detectors_.push_back(d);
        }
    }
    n_ = detectors_.size();

    std::map<PairKey, BulkEntry> bulk;
    std::map<std::pair<uint32_t, int>, double> bound;  // (node, obs flip) -> p
    struct Deferred {
        std::vector<uint32_t> nodes;
        double p;
        int obs;
    };
    std::vector<Deferred> deferred;

    for (const auto &mech : dem.mechanisms) {
        std::vector<uint32_t> nodes;
        for (uint32_t d : mech.detectors)
            if (node_of_[d] >= 0) nodes.push_back(static_cast<uint32_t>(node_of_[d]));
        int obs = std::binary_search(mech.observables.begin(), mech.observables.end(), observable_) ? 1 : 0;
        if (nodes.empty()) {
            if (obs)
                throw std::logic_error(
                    fmt::format("mechanism flips observable {} without firing any {}-family detector",
                                observable_, basis_));
            continue;
        }
        if (nodes.size() == 1) {
            fold_probability(bound[{nodes[0], obs}], mech.probability);
        } else if (nodes.size() == 2) {
            auto &e = bulk[{nodes[0], nodes[1]}];
            if (e.p > 0.0 && e.obs != obs)
                throw std::logic_error("detector pair reachable in both logical classes");
            e.obs = obs;
            fold_probability(e.p, mech.probability);
        } else if (nodes.size() <= 4) {
            deferred.push_back({std::move(nodes), mech.probability, obs});
        } else {
            throw std::logic_error(fmt::format("mechanism touches {} {}-family detectors", nodes.size(), basis_));
        }
    }

    // Mechanisms spanning 3-4 detectors of this family must decompose into
    // edges that occur on their own; the pieces inherit the full probability.
    auto pair_obs = [&](uint32_t a, uint32_t b) -> int {
        auto it = bulk.find({std::min(a, b), std::max(a, b)});
        return (it == bulk.end() || it->second.p <= 0.0) ? -1 : it->second.obs;
    };
    auto have_single = [&](uint32_t v, int o) {
        auto it = bound.find({v, o});
        return it != bound.end() && it->second > 0.0;
    };
    auto fold_pair = [&](uint32_t a, uint32_t b, double p) {
        fold_probability(bulk[{std::min(a, b), std::max(a, b)}].p, p);
    };
    for (const auto &df : deferred) {
        const auto &nd = df.nodes;
        bool done = false;
        if (nd.size() == 4) {
            static constexpr int kPairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
            for (const auto &pr : kPairings) {
                int o1 = pair_obs(nd[pr[0]], nd[pr[1]]), o2 = pair_obs(nd[pr[2]], nd[pr[3]]);
                if (o1 < 0 || o2 < 0 || ((o1 ^ o2) != df.obs)) continue;
                fold_pair(nd[pr[0]], nd[pr[1]], df.p);
                fold_pair(nd[pr[2]], nd[pr[3]], df.p);
                done = true;
                break;
            }
            if (!done) {
                for (size_t a = 0; a < 4 && !done; ++a)
                    for (size_t b = a + 1; b < 4 && !done; ++b) {
                        int op = pair_obs(nd[a], nd[b]);
                        if (op < 0) continue;
                        std::vector<uint32_t> rest;
                        for (size_t k = 0; k < 4; ++k)
                            if (k != a && k != b) rest.push_back(nd[k]);
                        for (int s1 = 0; s1 < 2 && !done; ++s1)
                            for (int s2 = 0; s2 < 2 && !done; ++s2) {
                                if ((op ^ s1 ^ s2) != df.obs) continue;
                                if (!have_single(rest[0], s1) || !have_single(rest[1], s2)) continue;
                                fold_pair(nd[a], nd[b], df.p);
                                fold_probability(bound[{rest[0], s1}], df.p);
                                fold_probability(bound[{rest[1], s2}], df.p);
                                done = true;
                            }
                    }
            }
        } else {  // size 3
            for (size_t s = 0; s < 3 && !done; ++s) {
                uint32_t a = nd[(s + 1) % 3], b = nd[(s + 2) % 3];
                int op = pair_obs(a, b);
                if (op < 0) continue;
                int os = df.obs ^ op;
                if (!have_single(nd[s], os)) continue;
                fold_pair(a, b, df.p);
                fold_probability(bound[{nd[s], os}], df.p);
                done = true;
            }
        }
        if (!done) {
            // Last resort: every detector reaches a boundary on its own.
            size_t k = nd.size();
            for (uint32_t mask = 0; mask < (1u << k) && !done; ++mask) {
                int par = 0;
                bool ok = true;
                for (size_t i = 0; i < k; ++i) {
                    int s = (mask >> i) & 1;
                    par ^= s;
                    if (!have_single(nd[i], s)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok || par != df.obs) continue;
                for (size_t i = 0; i < k; ++i)
                    fold_probability(bound[{nd[i], static_cast<int>((mask >> i) & 1)}], df.p);
                done = true;
            }
        }
        if (!done) {
            std::string ids;
            for (uint32_t v : nd) ids += fmt::format(" {}", detectors_[v]);
            throw std::logic_error(fmt::format("cannot decompose mechanism over detectors{}", ids));
        }
    }

    // Finalised edge set; assign side potentials by walking the bulk.
    struct Adj {
        uint32_t to;
        int64_t w;
        int obs;
    };
    std::vector<std::vector<Adj>> adj(n_);
    for (const auto &[key, e] : bulk) {
        if (e.p <= 0.0) continue;
        int64_t w = weight_of(e.p);
        adj[key.first].push_back({key.second, w, e.obs});
        adj[key.second].push_back({key.first, w, e.obs});
        ++num_bulk_edges_;
    }
    phi_.assign(n_, 0);
    component_.assign(n_, -1);
    int comps = 0;
    for (uint32_t root = 0; root < n_; ++root) {
        if (component_[root] >= 0) continue;
        component_[root] = comps;
        std::queue<uint32_t> q;
        q.push(root);
        while (!q.empty()) {
            uint32_t u = q.front();
            q.pop();
            for (const auto &a : adj[u]) {
                if (component_[a.to] < 0) {
                    component_[a.to] = comps;
                    phi_[a.to] = phi_[u] ^ static_cast<char>(a.obs);
                    q.push(a.to);
                }
            }
        }
        ++comps;
    }
    for (uint32_t u = 0; u < n_; ++u)
        for (const auto &a : adj[u])
            if ((phi_[u] ^ phi_[a.to]) != a.obs)
                throw std::logic_error("logical flips do not form a two-sided cut");

    struct BoundaryEdge {
        uint32_t v;
        int side;  // 0 = L, 1 = R
        int64_t w;
    };
    std::vector<BoundaryEdge> boundary;
    for (const auto &[key, p] : bound) {
        if (p <= 0.0) continue;
        boundary.push_back({key.first, phi_[key.first] ^ key.second, weight_of(p)});
        ++num_boundary_edges_;
    }

    // All-pairs shortest paths over the bulk, then the cheapest attachment to
    // each boundary class per node.
    dist_.assign(n_ * n_, kUnreach);
    using QE = std::pair<int64_t, uint32_t>;
    for (uint32_t src = 0; src < n_; ++src) {
        int64_t *row = dist_.data() + static_cast<size_t>(src) * n_;
        std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
        row[src] = 0;
        pq.push({0, src});
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d != row[u]) continue;
            for (const auto &a : adj[u])
                if (d + a.w < row[a.to]) {
                    row[a.to] = d + a.w;
                    pq.push({row[a.to], a.to});
                }
        }
    }
    for (int side = 0; side < 2; ++side) {
        auto &dist = side == 0 ? dist_l_ : dist_r_;
        dist.assign(n_, kUnreach);
        std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
        for (const auto &b : boundary)
            if (b.side == side && b.w < dist[b.v]) {
                dist[b.v] = b.w;
                pq.push({b.w, b.v});
            }
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d != dist[u]) continue;
            for (const auto &a : adj[u])
                if (d + a.w < dist[a.to]) {
                    dist[a.to] = d + a.w;
                    pq.push({dist[a.to], a.to});
                }
        }
    }
    w_cross_ = kUnreach;
    for (uint32_t v = 0; v < n_; ++v)
        if (dist_l_[v] < kUnreach && dist_r_[v] < kUnreach)
            w_cross_ = std::min(w_cross_, dist_l_[v] + dist_r_[v]);
}

std::vector<uint32_t> DecodingGraph::defects(const ShotBatch &batch, size_t shot) const {
    std::vector<uint32_t> out;
    for (uint32_t v = 0; v < n_; ++v)
        if (batch.detector(shot, detectors_[v])) out.push_back(v);
    return out;
}

int64_t DecodingGraph::pair_weight(uint32_t u, uint32_t v) const {
    int64_t w = dist_[static_cast<size_t>(u) * n_ + v];
    if (dist_l_[u] < kUnreach && dist_l_[v] < kUnreach) w = std::min(w, dist_l_[u] + dist_l_[v]);
    if (dist_r_[u] < kUnreach && dist_r_[v] < kUnreach) w = std::min(w, dist_r_[u] + dist_r_[v]);
    return std::min(w, kUnreach);
}

int64_t DecodingGraph::forced_weight(const std::vector<uint32_t> &defect_nodes, int cls) const {
    size_t m = defect_nodes.size();
    int rho = cls & 1;
    for (uint32_t v : defect_nodes) rho ^= phi_[v];
    bool slack_l = ((m + rho) & 1) != 0;
    bool slack_r = (rho & 1) != 0;
    size_t n = m + (slack_l ? 1 : 0) + (slack_r ? 1 : 0);
    if (n == 0) return 0;
    size_t il = m, ir = m + (slack_l ? 1 : 0);
    std::vector<std::vector<int64_t>> w(n, std::vector<int64_t>(n, kUnreach));
    for (size_t i = 0; i < n; ++i) w[i][i] = 0;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) w[i][j] = w[j][i] = pair_weight(defect_nodes[i], defect_nodes[j]);
    for (size_t i = 0; i < m; ++i) {
        if (slack_l) w[i][il] = w[il][i] = std::min(dist_l_[defect_nodes[i]], kUnreach);
        if (slack_r) w[i][ir] = w[ir][i] = std::min(dist_r_[defect_nodes[i]], kUnreach);
    }
    if (slack_l && slack_r) w[il][ir] = w[ir][il] = w_cross_;
    auto mate = min_weight_perfect_matching(w);
    int64_t total = 0;
    for (size_t i = 0; i < n; ++i)
        if (static_cast<size_t>(mate[i]) > i) total += w[i][mate[i]];
    if (total >= kUnreach) throw std::logic_error("forced class unreachable from these defects");
    return total;
}

DecodingGraph::Decode DecodingGraph::decode(const std::vector<uint32_t> &defect_nodes) const {
    Decode d;
    d.weight0 = forced_weight(defect_nodes, 0);
    d.weight1 = forced_weight(defect_nodes, 1);
    d.predicted = d.weight1 < d.weight0 ? 1 : 0;
    d.gap = std::abs(d.weight1 - d.weight0);
    return d;
}

namespace {

uint32_t observable_index(const DetectorErrorModel &dem, const std::string &name) {
    for (size_t i = 0; i < dem.observable_names.size(); ++i)
        if (dem.observable_names[i] == name) return static_cast<uint32_t>(i);
    throw std::invalid_argument(fmt::format("model has no observable named {}", name));
}

}  // namespace

GapDecoder::GapDecoder(const DetectorErrorModel &dem)
    : x_(dem, 'X', observable_index(dem, "xx")), z_(dem, 'Z', observable_index(dem, "zz")) {}

ShotDecode GapDecoder::decode(const ShotBatch &batch, size_t shot) const {
    ShotDecode out;
    auto dx = x_.decode(x_.defects(batch, shot));
    auto dz = z_.decode(z_.defects(batch, shot));
    out.pred_xx = dx.predicted;
    out.pred_zz = dz.predicted;
    out.gap_x = dx.gap;
    out.gap_z = dz.gap;
    out.gap = std::min(dx.gap, dz.gap);
    return out;
}

}  // namespace bellsim
