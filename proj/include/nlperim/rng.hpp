#pragma once

#include <cstdint>

namespace nlperim {

// Counter-based generator: draw k is a pure function of (seed, stream, k),
// so samples can be regenerated in any order and from any thread.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

    // k-th u64 of the stream (splitmix64 sequence anchored at key_)
    std::uint64_t bits(std::uint64_t k) const {
        return mix(key_ + (k + 1) * 0x9e3779b97f4a7c15ULL);
    }

    // uniform in [0, 1)
    double u01(std::uint64_t k) const {
        return static_cast<double>(bits(k) >> 11) * 0x1.0p-53;
    }

    // uniform in [-1, 1)
    double sym(std::uint64_t k) const { return 2.0 * u01(k) - 1.0; }

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

private:
    std::uint64_t key_;
};

// Stream ids used by VolumeSampler and the Monte Carlo estimators.
namespace rng_stream {
inline constexpr std::uint64_t inside_trials = 1;
inline constexpr std::uint64_t outside_trials = 2;
inline constexpr std::uint64_t line_direction = 3;
inline constexpr std::uint64_t line_radius = 4;
} // namespace rng_stream

} // namespace nlperim
