#pragma once
// Deterministic, splittable random number generation.
//
// Reproducibility contract: every randomized routine takes a 64-bit master
// seed and derives one independent stream per (stream id, task index) through
// the SplitMix64 finalizer. Task index is the loop index of the sample/path,
// so a parallel run visits exactly the same per-task generators as a serial
// run and results are bit-for-bit identical regardless of thread count.
//
// SplitMix64 is the public-domain generator of Steele/Lea/Flood (the one used
// to seed xoshiro); it is small, fast, passes BigCrush, and — unlike
// std::normal_distribution — has the same output on every platform, which the
// seed-determinism guarantees require.

#include <array>
#include <cmath>
#include <cstdint>

#include "dlab/common.hpp"

namespace dlab {

// SplitMix64 finalizer (also usable as a standalone 64-bit mixer).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1): top 53 bits of the output word.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform angle in [0, 2*pi).
    double next_angle() { return next_double() * kTwoPi; }

    // Standard normal pair via Box-Muller (platform-independent, unlike
    // std::normal_distribution whose algorithm is implementation-defined).
    std::array<double, 2> next_gauss_pair() {
        double u1 = next_double();
        double u2 = next_double();
        if (u1 <= 0.0) u1 = 0x1.0p-53;  // guard log(0)
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = kTwoPi * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    double next_gauss() { return next_gauss_pair()[0]; }

private:
    std::uint64_t state_;
};

// Named sub-streams so distinct randomized routines never share a stream even
// under the same master seed.
enum : std::uint64_t {
    kStreamHaar = 1,
    kStreamCarleson = 2,
    kStreamHelson = 3,
    kStreamAbel = 4,
    kStreamSupProbe = 5,
    kStreamLattice = 6,
    kStreamCoefficients = 7,
};

// Documented splitting rule:
//   task_seed(master, stream, index) = mix64(mix64(master ^ mix64(stream)) ^ (index + 1))
// Each task then runs its own SplitMix64 from that seed.
inline SplitMix64 task_rng(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    return SplitMix64(mix64(mix64(master ^ mix64(stream)) ^ (index + 1)));
}

inline constexpr std::uint64_t kDefaultSeed = 0xD1A1EC7AB5EEDULL;

}  // namespace dlab
