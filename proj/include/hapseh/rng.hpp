#pragma once

#include <cstdint>
#include <limits>

namespace hapseh {

/// Tags for the independent random streams a Monte-Carlo trial draws from.
enum class StreamTag : std::uint64_t {
    nakagami = 1,
    shadowed_rician = 2,
};

/// SplitMix64 generator. Small state makes it cheap to instantiate one per
/// trial, which is what keeps estimates independent of how trials are
/// partitioned across workers.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Generator for trial `index` of stream `tag` under master `seed`.
inline SplitMix64 substream(std::uint64_t seed, StreamTag tag, std::uint64_t index) noexcept {
    const std::uint64_t key =
        SplitMix64::mix(seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(tag) + 1));
    return SplitMix64(SplitMix64::mix(key ^ (index * 0xD1B54A32D192ED03ull)));
}

} // namespace hapseh
