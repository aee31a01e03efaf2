#pragma once

#include <cstdint>
#include <random>

namespace bmc {

// Hand-rolled draws: std::uniform_*_distribution output is
// implementation-defined, these are stable everywhere.

/// Uniform in [0,1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform in [lo,hi).
inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Uniform in (0,hi]: strictly positive, suitable for edge weights.
inline double uniform_positive(std::mt19937_64& rng, double hi) {
    return hi * (static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53);
}

/// Uniform integer in [lo,hi], inclusive.
inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

} // namespace bmc
