#include "bellsim/gf2.h"

#include <stdexcept>

namespace bellsim {

GF2Matrix GF2Matrix::identity(size_t n) {
    GF2Matrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m.set(i, i, true);
    }
    return m;
}

void GF2Matrix::swap_cols(size_t a, size_t b) {
    if (a == b) {
        return;
    }
    for (auto &row : rows) {
        bool va = row.get(a), vb = row.get(b);
        row.set(a, vb);
        row.set(b, va);
    }
}

GF2Matrix GF2Matrix::transposed() const {
    GF2Matrix out(num_cols, num_rows);
    for (size_t r = 0; r < num_rows; r++) {
        for (size_t c = 0; c < num_cols; c++) {
            if (get(r, c)) {
                out.set(c, r, true);
            }
        }
    }
    return out;
}

GF2Matrix GF2Matrix::times(const GF2Matrix &other) const {
    if (num_cols != other.num_rows) {
        throw std::invalid_argument("gf2 product shape mismatch");
    }
    GF2Matrix out(num_rows, other.num_cols);
    for (size_t r = 0; r < num_rows; r++) {
        for (size_t k = 0; k < num_cols; k++) {
            if (get(r, k)) {
                out.rows[r].xor_with(other.rows[k]);
            }
        }
    }
    return out;
}

std::vector<size_t> GF2Matrix::row_reduce() {
    std::vector<size_t> pivots;
    size_t pivot_row = 0;
    for (size_t col = 0; col < num_cols && pivot_row < num_rows; col++) {
        size_t found = SIZE_MAX;
        for (size_t r = pivot_row; r < num_rows; r++) {
            if (get(r, col)) {
                found = r;
                break;
            }
        }
        if (found == SIZE_MAX) {
            continue;
        }
        swap_rows(pivot_row, found);
        for (size_t r = 0; r < num_rows; r++) {
            if (r != pivot_row && get(r, col)) {
                xor_row(r, pivot_row);
            }
        }
        pivots.push_back(col);
        pivot_row++;
    }
    return pivots;
}

size_t GF2Matrix::rank() const {
    GF2Matrix copy = *this;
    return copy.row_reduce().size();
}

bool GF2Matrix::is_zero() const {
    for (const auto &row : rows) {
        if (!row.is_zero()) {
            return false;
        }
    }
    return true;
}

bool GF2Matrix::row_space_contains(const BitVec &v) const {
    GF2Matrix copy = *this;
    copy.rows.push_back(v);
    copy.num_rows++;
    return copy.rank() == rank();
}

GF2Matrix gf2_null_space(const GF2Matrix &m) {
    GF2Matrix reduced = m;
    std::vector<size_t> pivots = reduced.row_reduce();
    std::vector<bool> is_pivot(m.num_cols, false);
    for (size_t p : pivots) {
        is_pivot[p] = true;
    }
    GF2Matrix basis(m.num_cols - pivots.size(), m.num_cols);
    size_t out_row = 0;
    for (size_t f = 0; f < m.num_cols; f++) {
        if (is_pivot[f]) {
            continue;
        }
        basis.set(out_row, f, true);
        for (size_t i = 0; i < pivots.size(); i++) {
            if (reduced.get(i, f)) {
                basis.set(out_row, pivots[i], true);
            }
        }
        out_row++;
    }
    return basis;
}

size_t gf2_stacked_rank(const GF2Matrix &a, const GF2Matrix &b) {
    if (a.num_cols != b.num_cols) {
        throw std::invalid_argument("gf2 stacked rank shape mismatch");
    }
    GF2Matrix stacked(a.num_rows + b.num_rows, a.num_cols);
    stacked.rows.assign(a.rows.begin(), a.rows.end());
    stacked.rows.insert(stacked.rows.end(), b.rows.begin(), b.rows.end());
    return stacked.rank();
}

bool gf2_same_row_space(const GF2Matrix &a, const GF2Matrix &b) {
    size_t ra = a.rank(), rb = b.rank();
    return ra == rb && gf2_stacked_rank(a, b) == ra;
}

}  // namespace bellsim
