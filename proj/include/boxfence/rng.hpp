#ifndef BOXFENCE_RNG_HPP
#define BOXFENCE_RNG_HPP

#include <cstdint>

#include "normal.hpp"

namespace boxfence::sim {

// Counter-based random numbers: every word is a pure function of
// (seed, stream, counter), so a simulation can hand each replicate its own
// stream and evaluate draws in any order, on any number of threads, and
// still produce bit-identical values. No generator state exists to share or
// advance.

// SplitMix64 finalizer (Stafford mix 13 constants).
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

inline constexpr std::uint64_t counter_word(std::uint64_t seed, std::uint64_t stream,
                                            std::uint64_t counter) noexcept {
    constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    // Two mixing rounds keep nearby (stream, counter) pairs decorrelated.
    const std::uint64_t h = mix64(seed + kGolden * (stream + 1));
    return mix64(h + kGolden * (counter + 1));
}

// Uniform on the open interval (0,1): 53 high bits placed at bin centers,
// so 0 and 1 are unreachable and the value is safe to pass through a
// quantile function.
inline constexpr double uniform01(std::uint64_t word) noexcept {
    return (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal draw by inversion. Inversion keeps the draw a pure
// function of its counter (no rejection loops with data-dependent
// consumption), which is what makes the whole harness order-independent.
inline double normal_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return normal_quantile(uniform01(counter_word(seed, stream, counter)));
}

} // namespace boxfence::sim

#endif // BOXFENCE_RNG_HPP
