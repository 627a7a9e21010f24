#pragma once

#include <cstdint>

namespace randers {

// Counter-based generator: every value is a pure function of (seed, index,
// lane) through two rounds of the splitmix64 finalizer. No state, so streams
// are reproducible bit-for-bit regardless of evaluation order or threading.
struct CounterRng {
    std::uint64_t seed = 0;

    static std::uint64_t splitmix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t bits(std::uint64_t index, std::uint64_t lane = 0) const {
        return splitmix(splitmix(seed + 0x9E3779B97F4A7C15ULL * index) + lane);
    }

    // Uniform in [0, 1).
    double uniform(std::uint64_t index, std::uint64_t lane = 0) const {
        return static_cast<double>(bits(index, lane) >> 11) * 0x1.0p-53;
    }

    // Uniform in [-1, 1).
    double symmetric(std::uint64_t index, std::uint64_t lane = 0) const {
        return 2.0 * uniform(index, lane) - 1.0;
    }
};

}  // namespace randers
