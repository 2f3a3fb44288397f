#pragma once

#include <cstdint>

namespace rbc {

// splitmix64: the fixed, portable generator behind every randomized draw in
// the simulator. Stateless indexed access keeps draws splittable per device,
// so any implementation that follows these two functions reproduces the same
// initial-capacity lists for the same seed.

inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Maps a 64-bit word onto [0, 1) with 53-bit resolution.
inline double uniform_unit(std::uint64_t word) {
    return static_cast<double>(word >> 11) * 0x1.0p-53;
}

/// Small sequential wrapper for test fuzzing.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next() { return splitmix64_at(seed_, index_++); }
    double next_unit() { return uniform_unit(next()); }

private:
    std::uint64_t seed_;
    std::uint64_t index_ = 0;
};

}  // namespace rbc
