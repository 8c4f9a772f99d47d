#pragma once

#include <cstdint>

namespace sim {

// Counter-based SplitMix64: the value at a given counter is a pure function
// of (seed, counter), so sample streams can be partitioned across workers
// without shared state and replay bit-identically.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Uniform draw in (0, 1], safe as a log() argument.
inline double uniform_at(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>((splitmix64_at(seed, counter) >> 11) + 1) *
           0x1.0p-53;
}

// Independent child seed for stream `stream` (grid points, workers).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64_at(base ^ 0x5851F42D4C957F2DULL, stream);
}

} // namespace sim
