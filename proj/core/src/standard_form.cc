#include "bellsim/standard_form.h"

#include <fmt/format.h>

#include <stdexcept>

namespace bellsim {

namespace {

void swap_columns(GF2Matrix &m, size_t a, size_t b) {
    for (auto &row : m.rows) {
        bool va = row.get(a);
        bool vb = row.get(b);
        row.set(a, vb);
        row.set(b, va);
    }
}

/// In-place RREF of `target`, choosing pivot columns at positions col_start,
/// col_start+1, ... via column swaps. Swaps are mirrored onto `other` and
/// `perm`. Returns the rank; zero rows are moved to the bottom and dropped.
size_t reduce_block(GF2Matrix &target, GF2Matrix &other, std::vector<uint32_t> &perm, size_t col_start) {
    size_t rank = 0;
    size_t n = target.num_cols;
    while (rank < target.num_rows) {
        size_t pivot_row = SIZE_MAX;
        size_t pivot_col = SIZE_MAX;
        for (size_t c = col_start + rank; c < n && pivot_row == SIZE_MAX; c++) {
            for (size_t j = rank; j < target.num_rows; j++) {
                if (target.rows[j].get(c)) {
                    pivot_row = j;
                    pivot_col = c;
                    break;
                }
            }
        }
        if (pivot_row == SIZE_MAX) {
            break;
        }
        target.swap_rows(rank, pivot_row);
        if (pivot_col != col_start + rank) {
            swap_columns(target, pivot_col, col_start + rank);
            swap_columns(other, pivot_col, col_start + rank);
            std::swap(perm[pivot_col], perm[col_start + rank]);
        }
        for (size_t j = 0; j < target.num_rows; j++) {
            if (j != rank && target.rows[j].get(col_start + rank)) {
                target.xor_row(j, rank);
            }
        }
        rank++;
    }
    for (size_t j = rank; j < target.num_rows; j++) {
        if (!target.rows[j].is_zero()) {
            throw std::logic_error("dependent check rows did not cancel");
        }
    }
    target.rows.resize(rank, BitVec(n));
    target.num_rows = rank;
    return rank;
}

GF2Matrix column_slice(const GF2Matrix &m, size_t begin, size_t end) {
    GF2Matrix out(m.num_rows, end - begin);
    for (size_t r = 0; r < m.num_rows; r++) {
        for (size_t c = begin; c < end; c++) {
            out.set(r, c - begin, m.get(r, c));
        }
    }
    return out;
}

}  // namespace

StandardFormResult compute_standard_form(const GF2Matrix &h_x, const GF2Matrix &h_z) {
    if (h_x.num_cols != h_z.num_cols) {
        throw std::invalid_argument("check matrices act on different qubit counts");
    }
    if (!h_x.times(h_z.transposed()).is_zero()) {
        throw std::invalid_argument("X and Z checks do not commute");
    }
    StandardFormResult out;
    out.n = h_x.num_cols;
    out.perm.resize(out.n);
    for (size_t i = 0; i < out.n; i++) {
        out.perm[i] = uint32_t(i);
    }
    out.h_x_std = h_x;
    out.h_z_std = h_z;
    out.r = reduce_block(out.h_x_std, out.h_z_std, out.perm, 0);
    size_t rank_z = reduce_block(out.h_z_std, out.h_x_std, out.perm, out.r);
    if (out.r + rank_z > out.n) {
        throw std::logic_error("check ranks exceed qubit count");
    }
    out.k = out.n - out.r - rank_z;
    size_t m = rank_z;

    // Orthogonality forces every Z row to have a pivot past the X block, so
    // pivots land exactly on columns [r, r+m).
    for (size_t i = 0; i < m; i++) {
        if (!out.h_z_std.get(i, out.r + i)) {
            throw std::logic_error("Z block did not reduce to identity");
        }
    }

    out.a1 = column_slice(out.h_x_std, out.r, out.r + m);
    out.a2 = column_slice(out.h_x_std, out.r + m, out.n);
    out.d_block = column_slice(out.h_z_std, 0, out.r);
    out.e_block = column_slice(out.h_z_std, out.r + m, out.n);

    for (size_t i = 0; i < out.k; i++) {
        PauliString lx(out.n);
        for (size_t j = 0; j < m; j++) {
            if (out.e_block.get(j, i)) {
                lx.x.set(out.r + j, true);
            }
        }
        lx.x.set(out.r + m + i, true);
        PauliString lz(out.n);
        for (size_t j = 0; j < out.r; j++) {
            if (out.a2.get(j, i)) {
                lz.z.set(j, true);
            }
        }
        lz.z.set(out.r + m + i, true);
        out.logical_x.push_back(std::move(lx));
        out.logical_z.push_back(std::move(lz));
    }

    // The constructed pairs must commute with all checks and pair up
    // symplectically; anything else is a reduction bug.
    for (size_t i = 0; i < out.k; i++) {
        for (size_t row = 0; row < out.r; row++) {
            PauliString check(out.n);
            check.x = out.h_x_std.rows[row];
            if (!out.logical_x[i].commutes_with(check) || !out.logical_z[i].commutes_with(check)) {
                throw std::logic_error("logical operator hits an X check");
            }
        }
        for (size_t row = 0; row < m; row++) {
            PauliString check(out.n);
            check.z = out.h_z_std.rows[row];
            if (!out.logical_x[i].commutes_with(check) || !out.logical_z[i].commutes_with(check)) {
                throw std::logic_error("logical operator hits a Z check");
            }
        }
        for (size_t j = 0; j < out.k; j++) {
            bool anti = !out.logical_x[i].commutes_with(out.logical_z[j]);
            if (anti != (i == j)) {
                throw std::logic_error("logical pairing is not symplectic");
            }
        }
    }
    return out;
}

StandardFormResult compute_standard_form(const CssCodeSpec &spec) {
    StandardFormResult out = compute_standard_form(spec.h_x, spec.h_z);
    if (out.k != spec.k) {
        throw std::invalid_argument(
            fmt::format("code {} claims k={} but checks give k={}", spec.name, spec.k, out.k));
    }
    return out;
}

}  // namespace bellsim
