#ifndef BELLSIM_GF2_H
#define BELLSIM_GF2_H

#include <cstdint>
#include <vector>

#include "bellsim/bits.h"

namespace bellsim {

/// Dense GF(2) matrix with word-packed rows.
struct GF2Matrix {
    size_t num_rows = 0;
    size_t num_cols = 0;
    std::vector<BitVec> rows;

    GF2Matrix() = default;
    GF2Matrix(size_t r, size_t c) : num_rows(r), num_cols(c), rows(r, BitVec(c)) {}

    static GF2Matrix identity(size_t n);

    bool get(size_t r, size_t c) const { return rows[r].get(c); }
    void set(size_t r, size_t c, bool v) { rows[r].set(c, v); }

    void xor_row(size_t dst, size_t src) { rows[dst].xor_with(rows[src]); }
    void swap_rows(size_t a, size_t b) { std::swap(rows[a], rows[b]); }
    void swap_cols(size_t a, size_t b);

    GF2Matrix transposed() const;
    GF2Matrix times(const GF2Matrix &other) const;

    /// In-place row reduction picking the leftmost available pivot column.
    /// Returns the pivot column of each pivot row, in order.
    std::vector<size_t> row_reduce();

    size_t rank() const;

    bool is_zero() const;

    /// True when v lies in the row space.
    bool row_space_contains(const BitVec &v) const;

    bool operator==(const GF2Matrix &other) const {
        return num_rows == other.num_rows && num_cols == other.num_cols && rows == other.rows;
    }
};

/// Rank of the vertical stack [a; b] without materializing it.
size_t gf2_stacked_rank(const GF2Matrix &a, const GF2Matrix &b);

/// Basis of the right kernel {v : M v = 0}, one basis vector per row.
GF2Matrix gf2_null_space(const GF2Matrix &m);

/// True when a and b generate the same row space.
bool gf2_same_row_space(const GF2Matrix &a, const GF2Matrix &b);

}  // namespace bellsim

#endif
