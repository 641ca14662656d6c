#pragma once

#include <cstdint>
#include <random>

namespace qfin::sim {

// All stochastic behavior in the library flows through this wrapper so runs
// are reproducible bit-for-bit: mt19937_64 seeded explicitly, uniforms built
// as (x >> 11) * 2^-53 rather than through distribution objects whose output
// is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

// Derived seed for iteration `index` of an experiment seeded with `seed`.
// splitmix64 finalizer applied to seed + (index+1) * golden-gamma; independent
// streams for parallel Monte Carlo iterations.
inline std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace qfin::sim
