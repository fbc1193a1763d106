#ifndef BELLSIM_PAULI_H
#define BELLSIM_PAULI_H

#include <cstdint>
#include <string>

#include "bellsim/bits.h"

namespace bellsim {

/// An n-qubit Pauli operator stored as i^phase_exp * prod_q X_q^x[q] Z_q^z[q].
///
/// Keeping the X-before-Z factor order explicit (instead of treating Y as a
/// primitive) makes gate conjugation phase rules short: CNOT needs no phase
/// correction at all, and products only count Z1&X2 overlaps.
/// Y_q is represented as x=z=1 with a contributed i (phase_exp += 1).
struct PauliString {
    size_t num_qubits = 0;
    uint8_t phase_exp = 0;  // exponent of i, mod 4
    BitVec x;
    BitVec z;

    PauliString() = default;
    explicit PauliString(size_t n) : num_qubits(n), x(n), z(n) {}

    /// Parses strings like "+XIZ", "-iYY", "ZZ". 'I'/'_' both mean identity.
    static PauliString from_string(const std::string &text);

    static PauliString single_x(size_t n, size_t q);
    static PauliString single_y(size_t n, size_t q);
    static PauliString single_z(size_t n, size_t q);

    /// 0=I, 1=X, 2=Y, 3=Z at qubit q (ignoring phase).
    int letter_at(size_t q) const {
        bool xb = x.get(q), zb = z.get(q);
        if (xb && zb) {
            return 2;
        }
        return xb ? 1 : (zb ? 3 : 0);
    }

    void set_letter(size_t q, int letter);

    size_t weight() const;
    size_t count_y() const;

    bool commutes_with(const PauliString &other) const;

    /// this *= other (right multiplication), tracking the i exponent.
    void mul_right(const PauliString &other);

    /// Applies the Pauli phase rule for conjugation by another Pauli P:
    /// rows anticommuting with P flip sign.
    void conjugate_by_pauli(const PauliString &p) {
        if (!commutes_with(p)) {
            phase_exp = (uint8_t)((phase_exp + 2) & 3);
        }
    }

    // Clifford conjugation, mapping this -> U this U^dag.
    void apply_h(size_t q);
    void apply_s(size_t q);
    void apply_cnot(size_t c, size_t t);
    void apply_cz(size_t a, size_t b);

    /// True when the operator is Hermitian (a valid +-1 observable).
    bool is_hermitian() const { return ((phase_exp ^ count_y()) & 1) == 0; }

    /// Hermitian operators only: true when the sign in front of the
    /// X..Y..Z letter form is -1.
    bool negative_sign() const {
        return (((phase_exp - count_y()) & 3) == 2);
    }

    std::string str() const;

    bool operator==(const PauliString &other) const {
        return num_qubits == other.num_qubits && phase_exp == other.phase_exp &&
               x == other.x && z == other.z;
    }
};

PauliString pauli_product(const PauliString &a, const PauliString &b);

/// Letter code for set_letter/letter_at: 'I'/'_' -> 0, 'X' -> 1, 'Y' -> 2, 'Z' -> 3.
int pauli_letter_code(char letter);

}  // namespace bellsim

#endif
