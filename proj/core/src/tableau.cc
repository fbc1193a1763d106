#include "bellsim/tableau.h"

#include <stdexcept>

namespace bellsim {

StabilizerTableau::StabilizerTableau(size_t num_qubits) : n(num_qubits) {
    rows.reserve(2 * n);
    for (size_t i = 0; i < n; i++) {
        rows.push_back(PauliString::single_x(n, i));
    }
    for (size_t i = 0; i < n; i++) {
        rows.push_back(PauliString::single_z(n, i));
    }
    row_symbols.resize(2 * n);
}

void StabilizerTableau::apply_h(size_t q) {
    for (auto &r : rows) {
        r.apply_h(q);
    }
}

void StabilizerTableau::apply_s(size_t q) {
    for (auto &r : rows) {
        r.apply_s(q);
    }
}

void StabilizerTableau::apply_cnot(size_t c, size_t t) {
    for (auto &r : rows) {
        r.apply_cnot(c, t);
    }
}

void StabilizerTableau::apply_cz(size_t a, size_t b) {
    for (auto &r : rows) {
        r.apply_cz(a, b);
    }
}

void StabilizerTableau::apply_pauli(const PauliString &p) {
    for (auto &r : rows) {
        r.conjugate_by_pauli(p);
    }
}

void StabilizerTableau::apply_pauli_conditional(const PauliString &p, bool value,
                                                const SparseParity &symbols) {
    for (size_t i = 0; i < rows.size(); i++) {
        if (!rows[i].commutes_with(p)) {
            if (value) {
                rows[i].phase_exp = (uint8_t)((rows[i].phase_exp + 2) & 3);
            }
            row_symbols[i].xor_with(symbols);
        }
    }
}

void StabilizerTableau::row_mul(size_t dst, size_t src) {
    rows[dst].mul_right(rows[src]);
    row_symbols[dst].xor_with(row_symbols[src]);
}

MeasureResult StabilizerTableau::measure(const PauliString &obs, std::mt19937_64 *rng) {
    if (!obs.is_hermitian()) {
        throw std::invalid_argument("measured operator is not Hermitian: " + obs.str());
    }
    size_t p = 2 * n;
    for (size_t i = n; i < 2 * n; i++) {
        if (!rows[i].commutes_with(obs)) {
            p = i;
            break;
        }
    }
    MeasureResult out;
    if (p < 2 * n) {
        out.random = true;
        for (size_t i = 0; i < 2 * n; i++) {
            if (i != p && !rows[i].commutes_with(obs)) {
                row_mul(i, p);
            }
        }
        rows[p - n] = rows[p];
        row_symbols[p - n] = row_symbols[p];
        if (symbolic) {
            out.value = false;
            out.symbols.toggle(next_symbol++);
        } else {
            if (rng == nullptr) {
                throw std::invalid_argument("random measurement needs an rng");
            }
            out.value = ((*rng)() & 1) != 0;
        }
        rows[p] = obs;
        if (out.value) {
            rows[p].phase_exp = (uint8_t)((rows[p].phase_exp + 2) & 3);
        }
        row_symbols[p] = out.symbols;
        return out;
    }
    // Deterministic: accumulate the stabilizer product matching obs.
    PauliString scratch(n);
    SparseParity symbols;
    for (size_t i = 0; i < n; i++) {
        if (!rows[i].commutes_with(obs)) {
            scratch.mul_right(rows[n + i]);
            symbols.xor_with(row_symbols[n + i]);
        }
    }
    if (scratch.x != obs.x || scratch.z != obs.z) {
        throw std::logic_error("observable outside stabilizer group: " + obs.str());
    }
    out.random = false;
    out.value = (((scratch.phase_exp - obs.phase_exp) & 3) == 2);
    out.symbols = std::move(symbols);
    return out;
}

MeasureResult StabilizerTableau::measure_z(size_t q, std::mt19937_64 *rng) {
    return measure(PauliString::single_z(n, q), rng);
}

MeasureResult StabilizerTableau::measure_x(size_t q, std::mt19937_64 *rng) {
    return measure(PauliString::single_x(n, q), rng);
}

void StabilizerTableau::reset_z(size_t q, std::mt19937_64 *rng) {
    MeasureResult m = measure_z(q, rng);
    // Classically controlled X folds the outcome back out, forcing |0>.
    apply_pauli_conditional(PauliString::single_x(n, q), m.value, m.symbols);
}

void StabilizerTableau::reset_x(size_t q, std::mt19937_64 *rng) {
    MeasureResult m = measure_x(q, rng);
    apply_pauli_conditional(PauliString::single_z(n, q), m.value, m.symbols);
}

void StabilizerTableau::prepare_bell(size_t a, size_t b, std::mt19937_64 *rng) {
    reset_z(a, rng);
    reset_z(b, rng);
    apply_h(a);
    apply_cnot(a, b);
}

std::vector<PauliString> StabilizerTableau::canonical_stabilizers() const {
    std::vector<PauliString> gens(rows.begin() + n, rows.end());
    size_t pivot_row = 0;
    for (size_t bit = 0; bit < 2 * n && pivot_row < n; bit++) {
        bool is_x = bit < n;
        size_t q = is_x ? bit : bit - n;
        size_t found = SIZE_MAX;
        for (size_t r = pivot_row; r < n; r++) {
            bool b = is_x ? gens[r].x.get(q) : gens[r].z.get(q);
            if (b) {
                found = r;
                break;
            }
        }
        if (found == SIZE_MAX) {
            continue;
        }
        std::swap(gens[pivot_row], gens[found]);
        for (size_t r = 0; r < n; r++) {
            if (r == pivot_row) {
                continue;
            }
            bool b = is_x ? gens[r].x.get(q) : gens[r].z.get(q);
            if (b) {
                gens[r].mul_right(gens[pivot_row]);
            }
        }
        pivot_row++;
    }
    return gens;
}

}  // namespace bellsim
