#ifndef BELLSIM_SPARSE_PARITY_H
#define BELLSIM_SPARSE_PARITY_H

#include <algorithm>
#include <cstdint>
#include <vector>

namespace bellsim {

/// A set of uint32 ids under symmetric difference, stored sorted.
/// Used for fault-sensitivity sets (which detectors a fault flips) and for
/// the symbolic phase bits of the reference tableau. Sets stay tiny in
/// practice, so sorted vectors beat anything fancier.
struct SparseParity {
    std::vector<uint32_t> ids;

    bool empty() const { return ids.empty(); }
    size_t size() const { return ids.size(); }
    void clear() { ids.clear(); }

    bool contains(uint32_t v) const {
        return std::binary_search(ids.begin(), ids.end(), v);
    }

    /// Toggles membership of a single id.
    void toggle(uint32_t v) {
        auto it = std::lower_bound(ids.begin(), ids.end(), v);
        if (it != ids.end() && *it == v) {
            ids.erase(it);
        } else {
            ids.insert(it, v);
        }
    }

    /// this ^= other (symmetric difference of sorted lists).
    void xor_with(const SparseParity &other) {
        if (other.ids.empty()) {
            return;
        }
        std::vector<uint32_t> merged;
        merged.reserve(ids.size() + other.ids.size());
        auto a = ids.cbegin();
        auto b = other.ids.cbegin();
        while (a != ids.cend() && b != other.ids.cend()) {
            if (*a < *b) {
                merged.push_back(*a++);
            } else if (*b < *a) {
                merged.push_back(*b++);
            } else {
                ++a;
                ++b;
            }
        }
        merged.insert(merged.end(), a, ids.cend());
        merged.insert(merged.end(), b, other.ids.cend());
        ids = std::move(merged);
    }

    bool operator==(const SparseParity &other) const { return ids == other.ids; }
    bool operator<(const SparseParity &other) const { return ids < other.ids; }
};

}  // namespace bellsim

#endif
