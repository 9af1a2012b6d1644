#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ddh/toeplitz.hpp"
#include "ddh/types.hpp"

namespace ddh {

struct ResolventSample {
    Complex lambda;
    double dist;        ///< dist(lambda, [-1, 1])
    double norm_ratio;  ///< worst ||U||_2 dist / ||F||_2 over the trials
};

/// Sampled evidence for the containment of the numerical range in [-1, 1]
/// and for the resolvent bound.  rayleigh_* fields are filled by
/// rayleigh_scan, resolvent by resolvent_probe.
struct SpectralReport {
    int size;
    int samples;
    std::uint64_t seed;
    double rayleigh_min;
    double rayleigh_max;
    double max_imag_rayleigh;
    std::vector<ResolventSample> resolvent;
};

/// Extremes of <v, Tv> over `samples` seeded pseudo-random unit vectors plus
/// the coordinate unit vectors (whose Rayleigh value is 0, the diagonal).
/// Bit-reproducible for a fixed seed.
SpectralReport rayleigh_scan(const ToeplitzOperator& op, int samples, std::uint64_t seed);

/// For each lambda, the worst ratio ||U||_2 dist(lambda, C) / ||F||_2 over
/// `trials` random right-hand sides; the resolvent estimate keeps it at or
/// below 1 up to rounding.  Each lambda is factored once.
SpectralReport resolvent_probe(const ToeplitzOperator& op, std::span<const Complex> lambdas,
                               int trials, std::uint64_t seed);

}  // namespace ddh
