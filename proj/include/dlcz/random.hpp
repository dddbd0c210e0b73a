#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace dlcz {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3", SC'11).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based random stream. The 64-bit key is the run seed, the upper
/// half of the counter is the stream (trial) index and the lower half counts
/// blocks within the stream, so every (seed, trial) pair owns an independent
/// sequence regardless of which worker evaluates it.
///
/// Satisfies UniformRandomBitGenerator.
class RandomStream {
public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        if (next_ == 4) refill();
        const std::uint64_t hi = buffer_[next_++];
        const std::uint64_t lo = buffer_[next_++];
        return (hi << 32) | lo;
    }

    /// Uniform on the open interval (0, 1) with 53-bit resolution.
    double uniform() noexcept {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    void refill() noexcept;

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    unsigned next_ = 4;
};

/// SplitMix64 finaliser; used to derive independent seeds (e.g. one per scan
/// point) from a single user seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) noexcept;

}  // namespace dlcz
