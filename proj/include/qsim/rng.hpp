// rng.hpp
// Counter-based PRNG ("splitmix64-counter", version 1).
//
// Every random choice in the library flows through this generator. It is
// counter-based so that substreams derived from (seed, stream) are
// independent of evaluation order: trial k always sees the same values no
// matter how trials are scheduled.

#pragma once

#include <cstdint>

namespace qsim {

inline constexpr const char* kRngName = "splitmix64-counter";
inline constexpr int kRngVersion = 1;

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(mix(seed + kGolden) ^ mix(stream + kStreamSalt))) {}

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGolden); }

    // 53-bit mantissa double in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased integer in [0, n) via rejection sampling.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
    static constexpr std::uint64_t kStreamSalt = 0x5851F42D4C957F2Dull;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace qsim
