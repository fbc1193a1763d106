#include "bellsim/matching.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace bellsim {

namespace {

constexpr int kNone = -1;

// Maximum-weight matching via the primal-dual blossom method. Vertices are
// 0..n-1, blossom slots n..2n-1. All weights are pre-doubled by the caller so
// every dual stays integral. The caller arranges weights so the maximum-weight
// matching is automatically perfect (all weights strictly positive on a
// complete graph with an even vertex count).
struct Matcher {
    int n = 0;
    std::vector<std::vector<int64_t>> w;  // doubled weights

    std::vector<int> mate;                        // vertex -> vertex
    std::vector<int> vlabel;                      // vertex: 0 none, 1 S, 2 T
    std::vector<int> blabel;                      // blossom id: same coding
    std::vector<std::pair<int, int>> edge_into;   // per id: (outer vtx, inner vtx)
    std::vector<int> inblossom;                   // vertex -> top id
    std::vector<int> parent;                      // id -> containing blossom
    std::vector<int> base;                        // id -> base vertex
    std::vector<std::vector<int>> childs;         // blossom -> cycle of sub-ids
    std::vector<std::vector<std::pair<int, int>>> cyc_edge;  // edge i joins childs[i], childs[i+1]
    std::vector<int64_t> dual;                    // vertex y / blossom z
    std::vector<char> allowed;                    // n*n tight-edge memo
    std::vector<char> crumb;                      // scan markers per id
    std::vector<int> free_ids;
    std::deque<int> queue;

    explicit Matcher(std::vector<std::vector<int64_t>> weights)
        : n(static_cast<int>(weights.size())), w(std::move(weights)) {
        int slots = 2 * n;
        mate.assign(n, kNone);
        vlabel.assign(n, 0);
        blabel.assign(slots, 0);
        edge_into.assign(slots, {kNone, kNone});
        inblossom.resize(n);
        for (int v = 0; v < n; ++v) inblossom[v] = v;
        parent.assign(slots, kNone);
        base.resize(slots);
        for (int v = 0; v < n; ++v) base[v] = v;
        childs.resize(slots);
        cyc_edge.resize(slots);
        int64_t maxw = 0;
        for (auto &row : w)
            for (int64_t x : row) maxw = std::max(maxw, x);
        dual.assign(slots, 0);
        for (int v = 0; v < n; ++v) dual[v] = maxw / 2;
        allowed.assign(static_cast<size_t>(n) * n, 0);
        crumb.assign(slots, 0);
        for (int b = slots - 1; b >= n; --b) free_ids.push_back(b);
    }

    int64_t slack(int i, int j) const { return dual[i] + dual[j] - w[i][j]; }
    char &allow(int i, int j) { return allowed[static_cast<size_t>(i) * n + j]; }

    template <typename F>
    void for_leaves(int id, F &&f) const {
        if (id < n) {
            f(id);
            return;
        }
        for (int c : childs[id]) for_leaves(c, f);
    }

    static int wrap(int j, int len) { return ((j % len) + len) % len; }

    void assign_label(int v, int t, int from) {
        int b = inblossom[v];
        if (vlabel[v] != 0 || blabel[b] != 0) throw std::logic_error("relabel");
        vlabel[v] = blabel[b] = t;
        std::pair<int, int> e{from, v};
        if (from == kNone) e = {kNone, kNone};
        edge_into[v] = edge_into[b] = e;
        if (t == 1) {
            for_leaves(b, [&](int leaf) { queue.push_back(leaf); });
        } else {
            int bv = base[b];
            if (mate[bv] == kNone) throw std::logic_error("T-blossom without mate");
            assign_label(mate[bv], 1, bv);
        }
    }

    // Walk both tree paths toward the roots; the first id seen twice is the
    // lowest common ancestor. Returns kNone when the paths reach distinct
    // roots (an augmenting path exists).
    int scan_common(int v, int u) {
        std::vector<int> marked;
        int found = kNone;
        while (v != kNone) {
            int b = inblossom[v];
            if (crumb[b]) {
                found = b;
                break;
            }
            crumb[b] = 1;
            marked.push_back(b);
            if (edge_into[b].first == kNone) {
                v = kNone;  // tree root
            } else {
                int t = edge_into[b].first;
                int bt = inblossom[t];
                crumb[bt] = 1;
                marked.push_back(bt);
                v = edge_into[bt].first;
            }
            if (u != kNone) std::swap(v, u);
        }
        for (int b : marked) crumb[b] = 0;
        return found;
    }

    void add_blossom(int bb, int v, int u) {
        int b = free_ids.back();
        free_ids.pop_back();
        base[b] = base[bb];
        parent[b] = kNone;
        parent[bb] = b;
        std::vector<int> path;
        std::vector<std::pair<int, int>> edgs{{v, u}};
        int bv = inblossom[v];
        while (bv != bb) {
            parent[bv] = b;
            path.push_back(bv);
            edgs.push_back(edge_into[bv]);
            v = edge_into[bv].first;
            bv = inblossom[v];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(edgs.begin(), edgs.end());
        int bu = inblossom[u];
        while (bu != bb) {
            parent[bu] = b;
            path.push_back(bu);
            edgs.emplace_back(edge_into[bu].second, edge_into[bu].first);
            u = edge_into[bu].first;
            bu = inblossom[u];
        }
        childs[b] = std::move(path);
        cyc_edge[b] = std::move(edgs);
        blabel[b] = 1;
        edge_into[b] = edge_into[bb];
        dual[b] = 0;
        for_leaves(b, [&](int leaf) {
            if (blabel[inblossom[leaf]] == 2) queue.push_back(leaf);
            inblossom[leaf] = b;
        });
    }

    void expand_blossom(int b, bool endstage) {
        for (int s : childs[b]) {
            parent[s] = kNone;
            if (s < n) {
                inblossom[s] = s;
            } else if (endstage && dual[s] == 0) {
                expand_blossom(s, endstage);
            } else {
                for_leaves(s, [&](int leaf) { inblossom[leaf] = s; });
            }
        }
        if (!endstage && blabel[b] == 2) {
            // The blossom sat on an alternating path; relabel its pieces so the
            // tree stays valid after the shell disappears.
            int len = static_cast<int>(childs[b].size());
            int entry = inblossom[edge_into[b].second];
            int i = 0;
            while (childs[b][i] != entry) ++i;
            int j = i, jstep;
            if (i & 1) {
                j -= len;
                jstep = 1;
            } else {
                jstep = -1;
            }
            auto edge_at = [&](int k) { return cyc_edge[b][wrap(k, len)]; };
            int ev = edge_into[b].first, ew = edge_into[b].second;
            while (j != 0) {
                int p, q;
                if (jstep == 1)
                    std::tie(p, q) = edge_at(j);
                else
                    std::tie(q, p) = edge_at(j - 1);
                vlabel[ew] = 0;
                vlabel[q] = 0;
                assign_label(ew, 2, ev);
                allow(p, q) = allow(q, p) = 1;
                j += jstep;
                if (jstep == 1)
                    std::tie(ev, ew) = edge_at(j);
                else
                    std::tie(ew, ev) = edge_at(j - 1);
                allow(ev, ew) = allow(ew, ev) = 1;
                j += jstep;
            }
            int bw = childs[b][0];
            vlabel[ew] = blabel[bw] = 2;
            edge_into[ew] = edge_into[bw] = {ev, ew};
            j += jstep;
            while (childs[b][wrap(j, len)] != entry) {
                int bv = childs[b][wrap(j, len)];
                if (blabel[bv] == 1) {
                    j += jstep;
                    continue;
                }
                int labeled = kNone;
                for_leaves(bv, [&](int leaf) {
                    if (labeled == kNone && vlabel[leaf] != 0) labeled = leaf;
                });
                if (labeled != kNone) {
                    vlabel[labeled] = 0;
                    vlabel[mate[base[bv]]] = 0;
                    assign_label(labeled, 2, edge_into[labeled].first);
                }
                j += jstep;
            }
        }
        blabel[b] = 0;
        edge_into[b] = {kNone, kNone};
        childs[b].clear();
        cyc_edge[b].clear();
        free_ids.push_back(b);
    }

    // Rebase blossom b at vertex v, flipping matched/unmatched along the way
    // around the internal cycle.
    void augment_blossom(int b, int v) {
        int t = v;
        while (parent[t] != b) t = parent[t];
        if (t >= n) augment_blossom(t, v);
        int len = static_cast<int>(childs[b].size());
        int i = 0;
        while (childs[b][i] != t) ++i;
        int j = i, jstep;
        if (i & 1) {
            j -= len;
            jstep = 1;
        } else {
            jstep = -1;
        }
        auto child_at = [&](int k) { return childs[b][wrap(k, len)]; };
        auto edge_at = [&](int k) { return cyc_edge[b][wrap(k, len)]; };
        while (j != 0) {
            j += jstep;
            int tw, tx;
            if (jstep == 1)
                std::tie(tw, tx) = edge_at(j);
            else
                std::tie(tx, tw) = edge_at(j - 1);
            int c = child_at(j);
            if (c >= n) augment_blossom(c, tw);
            j += jstep;
            c = child_at(j);
            if (c >= n) augment_blossom(c, tx);
            mate[tw] = tx;
            mate[tx] = tw;
        }
        std::rotate(childs[b].begin(), childs[b].begin() + i, childs[b].end());
        std::rotate(cyc_edge[b].begin(), cyc_edge[b].begin() + i, cyc_edge[b].end());
        base[b] = base[childs[b][0]];
        if (base[b] != v) throw std::logic_error("rebase failed");
    }

    void augment_matching(int v, int u) {
        for (auto [s, t] : {std::pair{v, u}, std::pair{u, v}}) {
            for (;;) {
                int bs = inblossom[s];
                if (blabel[bs] != 1) throw std::logic_error("augment off the tree");
                if (bs >= n) augment_blossom(bs, s);
                mate[s] = t;
                if (edge_into[bs].first == kNone) break;  // reached the root
                int tb = inblossom[edge_into[bs].first];
                if (blabel[tb] != 2) throw std::logic_error("tree parity broken");
                auto [s2, t2] = edge_into[tb];
                if (tb >= n) augment_blossom(tb, t2);
                mate[t2] = s2;
                s = s2;
                t = t2;
            }
        }
    }

    // Grow trees from every free vertex until one augmentation happens.
    // Returns false when the duals prove the matching is already maximum.
    bool run_stage() {
        std::fill(vlabel.begin(), vlabel.end(), 0);
        std::fill(blabel.begin(), blabel.end(), 0);
        std::fill(edge_into.begin(), edge_into.end(), std::pair<int, int>{kNone, kNone});
        std::fill(allowed.begin(), allowed.end(), 0);
        queue.clear();
        bool any_free = false;
        for (int v = 0; v < n; ++v)
            if (mate[v] == kNone && vlabel[v] == 0 && blabel[inblossom[v]] == 0) {
                assign_label(v, 1, kNone);
                any_free = true;
            }
        if (!any_free) return false;
        for (;;) {
            while (!queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                for (int u = 0; u < n; ++u) {
                    if (u == v || inblossom[u] == inblossom[v]) continue;
                    if (!allow(v, u)) {
                        if (slack(v, u) != 0) continue;
                        allow(v, u) = allow(u, v) = 1;
                    }
                    int bu = inblossom[u];
                    if (blabel[bu] == 0) {
                        assign_label(u, 2, v);
                    } else if (blabel[bu] == 1) {
                        int common = scan_common(v, u);
                        if (common != kNone) {
                            add_blossom(common, v, u);
                        } else {
                            augment_matching(v, u);
                            return true;
                        }
                    } else if (vlabel[u] == 0) {
                        vlabel[u] = 2;
                        edge_into[u] = {v, u};
                    }
                }
            }
            // No tight edge left to scan: shift the duals.
            constexpr int64_t kInf = std::numeric_limits<int64_t>::max();
            int64_t d1 = kInf, d2 = kInf, d3 = kInf, d4 = kInf;
            int e2v = kNone, e2u = kNone, e3v = kNone, e3u = kNone, b4 = kNone;
            for (int v = 0; v < n; ++v)
                if (blabel[inblossom[v]] == 1) d1 = std::min(d1, dual[v]);
            for (int v = 0; v < n; ++v) {
                int lv = blabel[inblossom[v]];
                if (lv != 1) continue;
                for (int u = 0; u < n; ++u) {
                    if (u == v || inblossom[u] == inblossom[v]) continue;
                    int lu = blabel[inblossom[u]];
                    int64_t s = slack(v, u);
                    if (lu == 0) {
                        if (s < d2) {
                            d2 = s;
                            e2v = v;
                            e2u = u;
                        }
                    } else if (lu == 1) {
                        if (s / 2 < d3) {
                            if (s % 2 != 0) throw std::logic_error("odd S-S slack");
                            d3 = s / 2;
                            e3v = v;
                            e3u = u;
                        }
                    }
                }
            }
            for (int b = n; b < 2 * n; ++b)
                if (parent[b] == kNone && blabel[b] == 2 && !childs[b].empty() && dual[b] / 2 < d4) {
                    d4 = dual[b] / 2;
                    b4 = b;
                }
            int64_t delta = std::min({d1, d2, d3, d4});
            for (int v = 0; v < n; ++v) {
                int l = blabel[inblossom[v]];
                if (l == 1)
                    dual[v] -= delta;
                else if (l == 2)
                    dual[v] += delta;
            }
            for (int b = n; b < 2 * n; ++b) {
                if (parent[b] != kNone || childs[b].empty()) continue;
                if (blabel[b] == 1)
                    dual[b] += 2 * delta;
                else if (blabel[b] == 2)
                    dual[b] -= 2 * delta;
            }
            if (delta == d4) {
                expand_blossom(b4, false);
            } else if (delta == d2) {
                allow(e2v, e2u) = allow(e2u, e2v) = 1;
                queue.push_back(e2v);
            } else if (delta == d3) {
                allow(e3v, e3u) = allow(e3u, e3v) = 1;
                queue.push_back(e3v);
            } else {
                return false;  // delta == d1: no augmenting path exists
            }
        }
    }

    std::vector<int> solve() {
        while (run_stage()) {
            for (int b = n; b < 2 * n; ++b)
                if (parent[b] == kNone && !childs[b].empty() && dual[b] == 0) expand_blossom(b, true);
        }
        return mate;
    }
};

}  // namespace

std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<int64_t>> &weight) {
    int n = static_cast<int>(weight.size());
    if (n % 2 != 0) throw std::invalid_argument("perfect matching needs an even vertex count");
    if (n == 0) return {};
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(weight[i].size()) != n) throw std::invalid_argument("weight matrix not square");
        for (int j = 0; j < n; ++j) {
            if (weight[i][j] != weight[j][i]) throw std::invalid_argument("weight matrix not symmetric");
            if (i != j && weight[i][j] < 0) throw std::invalid_argument("negative weight");
        }
    }
    int64_t maxw = 0;
    for (auto &row : weight)
        for (int64_t x : row) maxw = std::max(maxw, x);
    // Flip to a maximisation problem with strictly positive weights: on a
    // complete graph every maximum-weight matching is then perfect, and
    // maximising sum(maxw + 1 - w) minimises sum(w). Doubling keeps the duals
    // integral throughout.
    std::vector<std::vector<int64_t>> flipped(n, std::vector<int64_t>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) flipped[i][j] = 2 * (maxw + 1 - weight[i][j]);
    Matcher m(std::move(flipped));
    std::vector<int> mate = m.solve();
    for (int v = 0; v < n; ++v)
        if (mate[v] == kNone || mate[mate[v]] != v) throw std::logic_error("matching not perfect");
    return mate;
}

}  // namespace bellsim
