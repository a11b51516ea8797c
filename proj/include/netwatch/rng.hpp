#pragma once

#include <cstdint>
#include <random>

namespace netwatch {

/// Deterministic RNG with cheap substream derivation. Replications derive
/// independent streams from (seed, rep) so results reduce identically
/// regardless of execution order.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(mix(seed)) {}
    Rng(uint64_t seed, uint64_t stream) : eng_(mix(mix(seed) + 0x9E3779B97F4A7C15ULL * (stream + 1))) {}

    /// Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    /// Poisson draw; Knuth for small means, PTRS transformed rejection for large.
    long poisson(double mean);

    /// Uniform integer on {lo, ..., hi} inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(uniform() * (hi - lo + 1));
    }

    std::mt19937_64& raw() { return eng_; }

private:
    static uint64_t mix(uint64_t x) {
        // splitmix64 finalizer
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 eng_;
};

}  // namespace netwatch
