#pragma once

#include <cstdint>

namespace deltagl {

// SplitMix64: tiny, fully specified, platform-independent generator.
// Used everywhere randomness is needed so that reports are byte-identical
// for a fixed seed regardless of compiler, libc, or thread count.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) via rejection (bound > 0).
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~0ULL) / bound);
        std::uint64_t v;
        do { v = next(); } while (v >= limit);
        return v % bound;
    }
};

// Derive an independent stream from (seed, a, b); used to give every
// (check, sample) pair its own deterministic generator.
inline Rng derive_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    Rng mix(seed);
    mix.state ^= 0x2545f4914f6cdd1dULL * (a + 1);
    mix.next();
    mix.state ^= 0x9e3779b97f4a7c15ULL * (b + 1);
    mix.next();
    return mix;
}

} // namespace deltagl
