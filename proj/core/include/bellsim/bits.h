#ifndef BELLSIM_BITS_H
#define BELLSIM_BITS_H

#include <cstdint>
#include <cstddef>
#include <vector>

namespace bellsim {

/// Word-packed vector of bits. All hot loops in the simulators run over
/// 64-bit words, so the storage is kept as raw words instead of
/// std::vector<bool>.
struct BitVec {
    size_t num_bits = 0;
    std::vector<uint64_t> words;

    BitVec() = default;
    explicit BitVec(size_t n) : num_bits(n), words((n + 63) >> 6, 0) {}

    size_t num_words() const { return words.size(); }

    bool get(size_t i) const { return (words[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v) {
        uint64_t mask = uint64_t{1} << (i & 63);
        if (v) {
            words[i >> 6] |= mask;
        } else {
            words[i >> 6] &= ~mask;
        }
    }
    void toggle(size_t i) { words[i >> 6] ^= uint64_t{1} << (i & 63); }

    void clear() {
        for (auto &w : words) {
            w = 0;
        }
    }

    void xor_with(const BitVec &other) {
        for (size_t i = 0; i < words.size(); i++) {
            words[i] ^= other.words[i];
        }
    }

    size_t popcount() const {
        size_t total = 0;
        for (uint64_t w : words) {
            total += (size_t)__builtin_popcountll(w);
        }
        return total;
    }

    bool is_zero() const {
        for (uint64_t w : words) {
            if (w) {
                return false;
            }
        }
        return true;
    }

    bool operator==(const BitVec &other) const {
        return num_bits == other.num_bits && words == other.words;
    }
};

}  // namespace bellsim

#endif
