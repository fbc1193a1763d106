#ifndef BELLSIM_SURFACE_CODE_H
#define BELLSIM_SURFACE_CODE_H

#include <array>
#include <cstdint>
#include <vector>

#include "bellsim/css_code.h"

namespace bellsim {

/// One weight-2 or weight-4 check of a rotated surface code patch.
/// Slots list the data qubits in the order the syndrome ancilla touches them;
/// -1 marks a slot whose data qubit is outside the patch.
struct Plaquette {
    char basis;  // 'X' or 'Z'
    int corner_row;
    int corner_col;
    std::array<int, 4> slots;
    std::vector<uint32_t> support;
};

/// Rotated surface code on a rows x cols grid of data qubits. The grid may be
/// offset inside a larger coordinate frame (row0, col0) so that sub-rectangles
/// of a merged patch keep the same check coloring; local data index for grid
/// position (r, c) is r*cols + c.
struct SurfaceCodeLayout {
    int rows = 0;
    int cols = 0;
    int row0 = 0;
    int col0 = 0;
    std::vector<Plaquette> plaquettes;
    std::vector<uint32_t> logical_x_support;  // left column, top to bottom
    std::vector<uint32_t> logical_z_support;  // top row, left to right

    size_t num_data() const {
        return size_t(rows) * size_t(cols);
    }
    int data_index(int r, int c) const {
        return r * cols + c;
    }
    size_t num_checks(char basis) const;
};

/// The ancilla for an X plaquette interacts NW,NE,SW,SE; a Z plaquette
/// NW,SW,NE,SE. Running all plaquettes in lockstep over these four layers
/// gives each data qubit at most one gate per layer and keeps two-step
/// ancilla errors parallel to the matching boundary of the same basis.
std::array<int, 4> plaquette_slot_layers(char basis);

SurfaceCodeLayout build_rotated_surface_layout(int rows, int cols, int row0 = 0, int col0 = 0);

/// Square distance-d patch.
SurfaceCodeLayout build_rotated_surface_code(int distance);

CssCodeSpec to_css_spec(const SurfaceCodeLayout &layout);

}  // namespace bellsim

#endif
