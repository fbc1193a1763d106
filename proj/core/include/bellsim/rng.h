#ifndef BELLSIM_RNG_H
#define BELLSIM_RNG_H

#include <cmath>
#include <cstdint>

namespace bellsim {

/// splitmix64 step (Vigna). Small, fast, and good enough statistically for
/// Monte Carlo fault sampling.
inline uint64_t splitmix64(uint64_t &state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d49bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based stream keyed by (seed, shot index). Each shot owns an
/// independent stream, so sampled bits do not depend on how shots are
/// partitioned across workers.
struct ShotRng {
    uint64_t state;

    ShotRng(uint64_t seed, uint64_t shot) {
        // Two mixing rounds decorrelate (seed, shot) pairs.
        uint64_t s = seed ^ 0x6a09e667f3bcc909ULL;
        splitmix64(s);
        s ^= shot * 0x9e3779b97f4a7c15ULL + 0xbb67ae8584caa73bULL;
        splitmix64(s);
        state = s;
    }

    uint64_t next_u64() { return splitmix64(state); }

    /// Uniform double in [0, 1).
    double next_double() {
        return (double)(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).
    uint32_t next_below(uint32_t n) {
        return (uint32_t)(next_u64() % n);
    }

    /// Number of Bernoulli(p) failures before the next success, i.e. how many
    /// events to skip in a homogeneous scan. Requires 0 < p < 1.
    uint64_t next_geometric_skip(double log1m_p) {
        double u = next_double();
        if (u <= 0) {
            u = 0x1.0p-53;
        }
        double g = std::log(u) / log1m_p;
        if (g >= 9e18) {
            return UINT64_MAX;
        }
        return (uint64_t)g;
    }
};

}  // namespace bellsim

#endif
