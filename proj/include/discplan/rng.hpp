#pragma once

#include <cstdint>

namespace discplan {

// splitmix64; used instead of std distributions so that seeded output is
// bit-identical across platforms and standard libraries.
struct Rng {
    std::uint64_t s;

    explicit Rng(std::uint64_t seed = 0x9E3779B97F4A7C15ULL) : s(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

}  // namespace discplan
