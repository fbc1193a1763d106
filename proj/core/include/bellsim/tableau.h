#ifndef BELLSIM_TABLEAU_H
#define BELLSIM_TABLEAU_H

#include <random>
#include <vector>

#include "bellsim/pauli.h"
#include "bellsim/sparse_parity.h"

namespace bellsim {

/// Result of a projective measurement.
///
/// In symbolic mode a random outcome is reported as value=0 plus a fresh
/// symbol id in `symbols`; the true outcome is value XOR the parity of the
/// symbols' coin flips. Deterministic-given-the-record outcomes carry the
/// symbols of the earlier measurements they depend on, which is what lets a
/// caller check that a parity of records is a constant.
struct MeasureResult {
    bool value = false;
    bool random = false;
    SparseParity symbols;
};

/// Aaronson-Gottesman style stabilizer/destabilizer tableau over n qubits.
/// Rows [0,n) are destabilizers, rows [n,2n) stabilizers. Starts in |0...0>.
class StabilizerTableau {
  public:
    size_t n;
    std::vector<PauliString> rows;
    std::vector<SparseParity> row_symbols;
    bool symbolic = false;
    uint32_t next_symbol = 0;

    explicit StabilizerTableau(size_t num_qubits);

    void apply_h(size_t q);
    void apply_s(size_t q);
    void apply_cnot(size_t c, size_t t);
    void apply_cz(size_t a, size_t b);

    /// Conjugates the state by a Pauli fault.
    void apply_pauli(const PauliString &p);

    /// Applies P conditioned on a classical parity (a feed-forward byte of
    /// measurement record): rows anticommuting with P pick up the condition.
    void apply_pauli_conditional(const PauliString &p, bool value,
                                 const SparseParity &symbols);

    /// Measures a Hermitian Pauli observable. rng may be null in symbolic
    /// mode (random outcomes then become fresh symbols).
    MeasureResult measure(const PauliString &obs, std::mt19937_64 *rng);

    MeasureResult measure_z(size_t q, std::mt19937_64 *rng);
    MeasureResult measure_x(size_t q, std::mt19937_64 *rng);

    void reset_z(size_t q, std::mt19937_64 *rng);
    void reset_x(size_t q, std::mt19937_64 *rng);

    /// Noiseless Bell pair |00>+|11> on (a, b), discarding prior state.
    void prepare_bell(size_t a, size_t b, std::mt19937_64 *rng);

    /// Stabilizer generators in row-reduced canonical form (signs included).
    /// Two tableaus describe the same state iff these lists are equal.
    std::vector<PauliString> canonical_stabilizers() const;

  private:
    void row_mul(size_t dst, size_t src);
};

}  // namespace bellsim

#endif
