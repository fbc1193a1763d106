#ifndef BELLSIM_TESTS_DENSE_SIM_H
#define BELLSIM_TESTS_DENSE_SIM_H

#include <complex>
#include <random>
#include <vector>

#include "bellsim/pauli.h"

namespace bellsim::test_support {

/// Brute-force statevector simulator. Slow and obviously correct; the
/// stabilizer tableau is checked against it on small systems.
struct DenseSim {
    size_t n;
    std::vector<std::complex<double>> amp;

    explicit DenseSim(size_t n);

    void h(size_t q);
    void s(size_t q);
    void cnot(size_t c, size_t t);
    void cz(size_t a, size_t b);
    void apply_pauli(const PauliString &p);

    /// Real part of <psi|P|psi>.
    double expectation(const PauliString &p) const;

    /// Probability that measuring P gives +1.
    double prob_plus(const PauliString &p) const;

    /// Projects onto the outcome. value=false means the +1 eigenspace. When
    /// forced=false the outcome is sampled with rng. Throws if the requested
    /// outcome has (near) zero probability.
    bool measure(const PauliString &p, std::mt19937_64 &rng, bool forced = false, bool forced_value = false);
};

}  // namespace bellsim::test_support

#endif
