#pragma once

#include <cstdint>
#include <limits>

namespace stirling {

/// SplitMix64 (Steele, Lea & Flood). 64-bit state; each call adds the
/// golden-ratio increment 0x9E3779B97F4A7C15 to the state and returns the
/// state passed through the murmur3-style finalizer
///   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
///   z ^= z >> 27; z *= 0x94D049BB133111EB;
///   z ^= z >> 31.
/// Satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection,
    /// so the result is exactly unbiased.
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

/// Seed for independent stream `stream` of a run seeded with `seed`:
/// mix(seed ^ mix(stream + 1)). Used for per-block and per-worker streams.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return SplitMix64::mix(seed ^ SplitMix64::mix(stream + 1));
}

}  // namespace stirling
