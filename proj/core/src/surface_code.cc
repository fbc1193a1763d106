#include "bellsim/surface_code.h"

#include <fmt/format.h>

#include <algorithm>
#include <stdexcept>

namespace bellsim {

size_t SurfaceCodeLayout::num_checks(char basis) const {
    size_t count = 0;
    for (const auto &p : plaquettes) {
        if (p.basis == basis) {
            count++;
        }
    }
    return count;
}

std::array<int, 4> plaquette_slot_layers(char basis) {
    // Slot order is NW, NE, SW, SE.
    if (basis == 'X') {
        return {0, 1, 2, 3};
    }
    return {0, 2, 1, 3};
}

SurfaceCodeLayout build_rotated_surface_layout(int rows, int cols, int row0, int col0) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("surface code patch needs at least one data qubit");
    }
    SurfaceCodeLayout layout;
    layout.rows = rows;
    layout.cols = cols;
    layout.row0 = row0;
    layout.col0 = col0;

    for (int s = row0 - 1; s <= row0 + rows - 1; s++) {
        for (int t = col0 - 1; t <= col0 + cols - 1; t++) {
            Plaquette p;
            p.basis = ((s + t) % 2 + 2) % 2 == 0 ? 'X' : 'Z';
            p.corner_row = s;
            p.corner_col = t;
            const int cand[4][2] = {{s, t}, {s, t + 1}, {s + 1, t}, {s + 1, t + 1}};
            for (int slot = 0; slot < 4; slot++) {
                int ar = cand[slot][0];
                int ac = cand[slot][1];
                bool inside = ar >= row0 && ar < row0 + rows && ac >= col0 && ac < col0 + cols;
                p.slots[slot] = inside ? layout.data_index(ar - row0, ac - col0) : -1;
            }
            size_t present = 0;
            for (int slot = 0; slot < 4; slot++) {
                if (p.slots[slot] >= 0) {
                    p.support.push_back(uint32_t(p.slots[slot]));
                    present++;
                }
            }
            if (present == 4) {
                layout.plaquettes.push_back(std::move(p));
                continue;
            }
            if (present != 2) {
                continue;
            }
            bool top_bottom = s == row0 - 1 || s == row0 + rows - 1;
            bool left_right = t == col0 - 1 || t == col0 + cols - 1;
            if ((top_bottom && p.basis == 'X') || (left_right && p.basis == 'Z')) {
                layout.plaquettes.push_back(std::move(p));
            }
        }
    }

    if (layout.plaquettes.size() + 1 != layout.num_data()) {
        throw std::logic_error(fmt::format(
            "patch {}x{} at ({},{}) produced {} checks for {} data qubits", rows, cols, row0, col0,
            layout.plaquettes.size(), layout.num_data()));
    }

    for (int r = 0; r < rows; r++) {
        layout.logical_x_support.push_back(uint32_t(layout.data_index(r, 0)));
    }
    for (int c = 0; c < cols; c++) {
        layout.logical_z_support.push_back(uint32_t(layout.data_index(0, c)));
    }
    return layout;
}

SurfaceCodeLayout build_rotated_surface_code(int distance) {
    return build_rotated_surface_layout(distance, distance);
}

CssCodeSpec to_css_spec(const SurfaceCodeLayout &layout) {
    CssCodeSpec spec;
    spec.name = fmt::format("surface_{}x{}", layout.rows, layout.cols);
    spec.n = layout.num_data();
    spec.k = 1;
    spec.d = size_t(std::min(layout.rows, layout.cols));
    spec.h_x = GF2Matrix(layout.num_checks('X'), spec.n);
    spec.h_z = GF2Matrix(layout.num_checks('Z'), spec.n);
    size_t rx = 0;
    size_t rz = 0;
    for (const auto &p : layout.plaquettes) {
        GF2Matrix &h = p.basis == 'X' ? spec.h_x : spec.h_z;
        size_t &r = p.basis == 'X' ? rx : rz;
        for (uint32_t q : p.support) {
            h.set(r, q, true);
        }
        r++;
    }
    PauliString lx(spec.n);
    for (uint32_t q : layout.logical_x_support) {
        lx.x.set(q, true);
    }
    PauliString lz(spec.n);
    for (uint32_t q : layout.logical_z_support) {
        lz.z.set(q, true);
    }
    spec.logical_x.push_back(std::move(lx));
    spec.logical_z.push_back(std::move(lz));
    return spec;
}

}  // namespace bellsim
