#include "support/dense_sim.h"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace bellsim::test_support {

namespace {
constexpr std::complex<double> kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
}

DenseSim::DenseSim(size_t n) : n(n), amp(size_t(1) << n) {
    amp[0] = 1.0;
}

void DenseSim::h(size_t q) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    size_t mask = size_t(1) << q;
    for (size_t b = 0; b < amp.size(); b++) {
        if (b & mask) {
            continue;
        }
        auto a0 = amp[b];
        auto a1 = amp[b | mask];
        amp[b] = (a0 + a1) * inv_sqrt2;
        amp[b | mask] = (a0 - a1) * inv_sqrt2;
    }
}

void DenseSim::s(size_t q) {
    size_t mask = size_t(1) << q;
    for (size_t b = 0; b < amp.size(); b++) {
        if (b & mask) {
            amp[b] *= std::complex<double>(0, 1);
        }
    }
}

void DenseSim::cnot(size_t c, size_t t) {
    size_t cmask = size_t(1) << c;
    size_t tmask = size_t(1) << t;
    for (size_t b = 0; b < amp.size(); b++) {
        if ((b & cmask) && !(b & tmask)) {
            std::swap(amp[b], amp[b | tmask]);
        }
    }
}

void DenseSim::cz(size_t a, size_t b) {
    size_t mask = (size_t(1) << a) | (size_t(1) << b);
    for (size_t idx = 0; idx < amp.size(); idx++) {
        if ((idx & mask) == mask) {
            amp[idx] = -amp[idx];
        }
    }
}

void DenseSim::apply_pauli(const PauliString &p) {
    if (p.num_qubits != n) {
        throw std::invalid_argument("pauli size mismatch");
    }
    size_t xmask = 0;
    size_t zmask = 0;
    for (size_t q = 0; q < n; q++) {
        if (p.x.get(q)) {
            xmask |= size_t(1) << q;
        }
        if (p.z.get(q)) {
            zmask |= size_t(1) << q;
        }
    }
    std::vector<std::complex<double>> out(amp.size());
    for (size_t b = 0; b < amp.size(); b++) {
        // i^e * X^x Z^z |b> = i^e * (-1)^{|b & z|} |b ^ x>
        auto factor = kPhases[p.phase_exp & 3];
        if (std::popcount(b & zmask) & 1) {
            factor = -factor;
        }
        out[b ^ xmask] += factor * amp[b];
    }
    amp = std::move(out);
}

double DenseSim::expectation(const PauliString &p) const {
    DenseSim scratch = *this;
    scratch.apply_pauli(p);
    std::complex<double> dot = 0;
    for (size_t b = 0; b < amp.size(); b++) {
        dot += std::conj(amp[b]) * scratch.amp[b];
    }
    return dot.real();
}

double DenseSim::prob_plus(const PauliString &p) const {
    return (1.0 + expectation(p)) / 2.0;
}

bool DenseSim::measure(const PauliString &p, std::mt19937_64 &rng, bool forced, bool forced_value) {
    double pp = prob_plus(p);
    bool value;
    if (forced) {
        value = forced_value;
    } else {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        value = unit(rng) >= pp;
    }
    double prob = value ? 1.0 - pp : pp;
    if (prob < 1e-9) {
        throw std::logic_error("forced measurement outcome has zero probability");
    }
    // Project with (I + (-1)^value P)/2 and renormalize.
    DenseSim scratch = *this;
    scratch.apply_pauli(p);
    double norm = 0;
    for (size_t b = 0; b < amp.size(); b++) {
        auto projected = (amp[b] + (value ? -scratch.amp[b] : scratch.amp[b])) * 0.5;
        amp[b] = projected;
        norm += std::norm(projected);
    }
    norm = std::sqrt(norm);
    for (auto &a : amp) {
        a /= norm;
    }
    return value;
}

}  // namespace bellsim::test_support
