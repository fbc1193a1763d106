#ifndef BELLSIM_CSS_CODE_H
#define BELLSIM_CSS_CODE_H

#include <string>
#include <vector>

#include "bellsim/gf2.h"
#include "bellsim/pauli.h"

namespace bellsim {

/// An [[n, k, d]] CSS code given by X/Z parity checks plus chosen logical
/// representatives. d = 0 means "not claimed".
struct CssCodeSpec {
    std::string name;
    size_t n = 0;
    size_t k = 0;
    size_t d = 0;
    GF2Matrix h_x;
    GF2Matrix h_z;
    std::vector<PauliString> logical_x;
    std::vector<PauliString> logical_z;

    std::string to_json() const;
    static CssCodeSpec from_json(const std::string &text);
};

/// [[2m, 2m-2, 2]] error-detecting code with the two full-weight generators
/// X^(2m) and Z^(2m).
CssCodeSpec build_parity_code(size_t m);

/// Steane's [[7,1,3]] code.
CssCodeSpec steane_code();

struct CodeCheckReport {
    bool ok = true;
    std::vector<std::string> violations;
    /// Distance found by enumeration; 0 when n was above the brute-force cap.
    size_t distance_found = 0;
};

/// Checks commutation, ranks, logical pairing, and (for n <= brute_limit)
/// the claimed distance by low-weight enumeration.
CodeCheckReport verify_code(const CssCodeSpec &spec, size_t brute_limit = 12);

/// Minimum weight of a nontrivial logical operator, by enumerating X-type and
/// Z-type vectors in increasing weight (sufficient for CSS codes).
size_t css_brute_force_distance(const CssCodeSpec &spec);

}  // namespace bellsim

#endif
