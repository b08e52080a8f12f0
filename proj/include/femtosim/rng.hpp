#pragma once

#include <cstdint>
#include <vector>

namespace femtosim {

// Counter-based splitmix64 generator. Cheap to seed, so every (seed, stream)
// pair gets an independent instance and replays are exact regardless of how
// many draws other streams consumed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 bits of precision.
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound) by rejection, bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

// Mixes a base seed with stream labels so nested experiments (point, trial)
// draw from non-overlapping sequences.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a,
                                   std::uint64_t b = 0) {
    SplitMix64 g(seed ^ (a * 0xA24BAED4963EE407ull) ^
                 (b * 0x9FB21C651E98DF25ull));
    return g.next();
}

// Identity permutation of n elements shuffled in place (Fisher-Yates).
inline std::vector<std::size_t> random_permutation(std::size_t n,
                                                   SplitMix64& rng) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

}  // namespace femtosim
