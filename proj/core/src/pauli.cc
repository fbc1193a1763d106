#include "bellsim/pauli.h"

#include <stdexcept>

namespace bellsim {

PauliString PauliString::from_string(const std::string &text) {
    size_t i = 0;
    uint8_t phase = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        if (text[i] == '-') {
            phase = 2;
        }
        i++;
    }
    if (i < text.size() && text[i] == 'i') {
        phase = (uint8_t)((phase + 1) & 3);
        i++;
    }
    PauliString p(text.size() - i);
    for (size_t q = 0; i < text.size(); i++, q++) {
        switch (text[i]) {
            case 'I':
            case '_':
                break;
            case 'X':
                p.x.set(q, true);
                break;
            case 'Y':
                p.x.set(q, true);
                p.z.set(q, true);
                phase = (uint8_t)((phase + 1) & 3);
                break;
            case 'Z':
                p.z.set(q, true);
                break;
            default:
                throw std::invalid_argument("bad pauli character in " + text);
        }
    }
    p.phase_exp = phase;
    return p;
}

PauliString PauliString::single_x(size_t n, size_t q) {
    PauliString p(n);
    p.x.set(q, true);
    return p;
}

PauliString PauliString::single_y(size_t n, size_t q) {
    PauliString p(n);
    p.x.set(q, true);
    p.z.set(q, true);
    p.phase_exp = 1;
    return p;
}

PauliString PauliString::single_z(size_t n, size_t q) {
    PauliString p(n);
    p.z.set(q, true);
    return p;
}

void PauliString::set_letter(size_t q, int letter) {
    // Keeps the sign convention of from_string: writing a Y contributes an i.
    int old = letter_at(q);
    if (old == 2) {
        phase_exp = (uint8_t)((phase_exp + 3) & 3);
    }
    x.set(q, letter == 1 || letter == 2);
    z.set(q, letter == 2 || letter == 3);
    if (letter == 2) {
        phase_exp = (uint8_t)((phase_exp + 1) & 3);
    }
}

size_t PauliString::weight() const {
    size_t total = 0;
    for (size_t w = 0; w < x.num_words(); w++) {
        total += (size_t)__builtin_popcountll(x.words[w] | z.words[w]);
    }
    return total;
}

size_t PauliString::count_y() const {
    size_t total = 0;
    for (size_t w = 0; w < x.num_words(); w++) {
        total += (size_t)__builtin_popcountll(x.words[w] & z.words[w]);
    }
    return total;
}

bool PauliString::commutes_with(const PauliString &other) const {
    uint64_t acc = 0;
    for (size_t w = 0; w < x.num_words(); w++) {
        acc ^= (uint64_t)__builtin_popcountll(x.words[w] & other.z.words[w]);
        acc ^= (uint64_t)__builtin_popcountll(z.words[w] & other.x.words[w]);
    }
    return (acc & 1) == 0;
}

void PauliString::mul_right(const PauliString &other) {
    if (num_qubits != other.num_qubits) {
        throw std::invalid_argument("pauli size mismatch in product");
    }
    // (X^x1 Z^z1)(X^x2 Z^z2) = (-1)^(z1&x2) X^(x1^x2) Z^(z1^z2) per qubit.
    size_t swaps = 0;
    for (size_t w = 0; w < x.num_words(); w++) {
        swaps += (size_t)__builtin_popcountll(z.words[w] & other.x.words[w]);
        x.words[w] ^= other.x.words[w];
        z.words[w] ^= other.z.words[w];
    }
    phase_exp = (uint8_t)((phase_exp + other.phase_exp + 2 * swaps) & 3);
}

void PauliString::apply_h(size_t q) {
    bool xb = x.get(q), zb = z.get(q);
    x.set(q, zb);
    z.set(q, xb);
    if (xb && zb) {
        phase_exp = (uint8_t)((phase_exp + 2) & 3);
    }
}

void PauliString::apply_s(size_t q) {
    // S X S^dag = iXZ, S Z S^dag = Z, S (XZ) S^dag = iX.
    if (x.get(q)) {
        z.toggle(q);
        phase_exp = (uint8_t)((phase_exp + 1) & 3);
    }
}

void PauliString::apply_cnot(size_t c, size_t t) {
    // No phase fixup needed in the explicit X^x Z^z ordering.
    if (x.get(c)) {
        x.toggle(t);
    }
    if (z.get(t)) {
        z.toggle(c);
    }
}

void PauliString::apply_cz(size_t a, size_t b) {
    bool xa = x.get(a), xb = x.get(b);
    if (xa) {
        z.toggle(b);
    }
    if (xb) {
        z.toggle(a);
    }
    if (xa && xb) {
        phase_exp = (uint8_t)((phase_exp + 2) & 3);
    }
}

std::string PauliString::str() const {
    size_t ys = count_y();
    int display = (int)((phase_exp + 4u - (ys & 3u)) & 3u);
    static const char *prefix[4] = {"+", "+i", "-", "-i"};
    std::string out = prefix[display];
    static const char letters[5] = "_XYZ";
    for (size_t q = 0; q < num_qubits; q++) {
        out += letters[letter_at(q)];
    }
    return out;
}

PauliString pauli_product(const PauliString &a, const PauliString &b) {
    PauliString out = a;
    out.mul_right(b);
    return out;
}

int pauli_letter_code(char letter) {
    switch (letter) {
        case 'I':
        case '_':
            return 0;
        case 'X':
            return 1;
        case 'Y':
            return 2;
        case 'Z':
            return 3;
        default:
            throw std::invalid_argument(std::string("bad pauli letter: ") + letter);
    }
}

}  // namespace bellsim
