#ifndef FFLAB_RNG_HPP
#define FFLAB_RNG_HPP

#include <cstdint>

namespace fflab {

/// xorshift64* with the standard (12, 25, 27) shifts and multiplier
/// 0x2545F4914F6CDD1D. The raw seed is offset by the golden-ratio constant
/// 0x9E3779B97F4A7C15 so that seed 0 is usable; a zero state falls back to
/// the offset itself. Trial streams are seeded as seed + trial_index, so the
/// whole search output is reproducible across runs and ports.
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed) {
        state_ = seed + 0x9E3779B97F4A7C15ull;
        if (state_ == 0) state_ = 0x9E3779B97F4A7C15ull;
    }

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1Dull;
    }

    /// Uniform-enough draw in [0, bound); bound 0 returns 0. The modulo bias
    /// is irrelevant at desk scale and keeps the stream portable.
    std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

    bool coin() { return (next() & 1) != 0; }

private:
    std::uint64_t state_;
};

}  // namespace fflab

#endif
