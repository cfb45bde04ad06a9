#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace baglid {

// The standard distributions are implementation-defined, so every draw goes
// through the helpers below to stay bit-reproducible across toolchains.
using Engine = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seed of the sub-stream `ordinal` of `seed`; depends on nothing else.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t ordinal) noexcept {
    return mix64(seed ^ mix64(ordinal + 0x632BE59BD9B4E019ull));
}

inline Engine make_engine(std::uint64_t seed, std::uint64_t ordinal) {
    return Engine(derive_seed(seed, ordinal));
}

/// Uniform in [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(Engine& eng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(eng);
}

/// Unbiased integer in [0, bound) by rejection.
inline std::uint64_t uniform_index(Engine& eng, std::uint64_t bound) {
    const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - bound + 1) % bound;
    for (;;) {
        const std::uint64_t x = eng();
        if (x >= limit) return x % bound;
    }
}

/// Standard normal via Box-Muller; consumes exactly two engine outputs.
inline double standard_normal(Engine& eng) {
    double u1 = uniform01(eng);
    const double u2 = uniform01(eng);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace baglid
