#pragma once

#include <cstdint>
#include <random>

namespace sirmeta {

// All Monte Carlo randomness flows through streams derived from a single
// master seed.  Stream (seed, index, attempt) is decorrelated from its
// neighbours by splitmix64 mixing, so realization i is reproducible no matter
// which thread executes it and resampling realization i (attempt > 0) does not
// disturb realization i+1.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t index,
                                   std::uint64_t attempt = 0) {
    std::uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ index);
    h = splitmix64(h ^ attempt);
    return std::mt19937_64(h);
}

inline double uniform01(std::mt19937_64& rng) {
    // 53-bit mantissa draw in [0, 1)
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

} // namespace sirmeta
