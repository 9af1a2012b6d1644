#pragma once

#include <cstdint>

#include "ddh/types.hpp"

namespace ddh {

/// splitmix64 (Steele/Lea/Flood): the state advances by the golden-ratio
/// increment and the output is a finalizer of the new state.  Spelled out
/// here instead of using <random> so seeded scans are bit-reproducible
/// across standard libraries.
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

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1, 1).
    double symmetric() { return 2.0 * uniform() - 1.0; }

    Complex complex_symmetric() {
        const double re = symmetric();
        const double im = symmetric();
        return {re, im};
    }

private:
    std::uint64_t state_;
};

}  // namespace ddh
