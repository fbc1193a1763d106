#ifndef BELLSIM_STANDARD_FORM_H
#define BELLSIM_STANDARD_FORM_H

#include <cstdint>
#include <vector>

#include "bellsim/css_code.h"
#include "bellsim/gf2.h"
#include "bellsim/pauli.h"

namespace bellsim {

/// CSS check matrices brought to standard form by row reduction and column
/// permutation:
///
///   h_x_std = [ I_r  A1  A2 ]      h_z_std = [ D  I_m  E ]
///
/// with column blocks of widths r, m = n-k-r, k. Everything here lives in the
/// permuted qubit order; perm[pos] gives the original qubit at position pos.
struct StandardFormResult {
    size_t n = 0;
    size_t k = 0;
    size_t r = 0;
    std::vector<uint32_t> perm;
    GF2Matrix h_x_std;
    GF2Matrix h_z_std;
    GF2Matrix a1;
    GF2Matrix a2;
    GF2Matrix d_block;
    GF2Matrix e_block;
    /// X-type pair members [0 E^T I | 0 0 0], Z-type [0 0 0 | A2^T 0 I].
    std::vector<PauliString> logical_x;
    std::vector<PauliString> logical_z;

    size_t mid() const {
        return n - k - r;
    }
    uint32_t original_qubit(uint32_t pos) const {
        return perm[pos];
    }
};

StandardFormResult compute_standard_form(const GF2Matrix &h_x, const GF2Matrix &h_z);
StandardFormResult compute_standard_form(const CssCodeSpec &spec);

}  // namespace bellsim

#endif
