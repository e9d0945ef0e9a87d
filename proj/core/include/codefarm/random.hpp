#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace codefarm {

/// SplitMix64 stream. The whole state is one 64-bit counter, so a stream can
/// be persisted and restored exactly. Satisfies UniformRandomBitGenerator.
class RandomStream {
public:
    using result_type = std::uint64_t;

    constexpr RandomStream() = default;
    constexpr explicit RandomStream(std::uint64_t state) : state_{state} {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() { return next_u64(); }

    constexpr std::uint64_t next_u64()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound). bound must be nonzero.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Uniform integer in [lo, hi], inclusive.
    std::uint64_t uniform_between(std::uint64_t lo, std::uint64_t hi);

    /// Uniform double in [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// True with probability p. p <= 0 never draws true, p >= 1 always does,
    /// and both still consume one value so stream positions stay aligned.
    bool bernoulli(double p) { return uniform01() < p; }

    std::uint8_t uniform_byte() { return static_cast<std::uint8_t>(next_u64() >> 56); }

    constexpr std::uint64_t state() const { return state_; }
    constexpr void set_state(std::uint64_t s) { state_ = s; }

    friend constexpr bool operator==(const RandomStream&, const RandomStream&) = default;

private:
    std::uint64_t state_ = 0;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a64(std::string_view text, std::uint64_t hash = 0xcbf29ce484222325ULL)
{
    for (char ch : text) {
        hash ^= static_cast<unsigned char>(ch);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

/// Stream keyed by (master_seed, name). Distinct names give unrelated streams.
constexpr RandomStream derive_stream(std::uint64_t master_seed, std::string_view name)
{
    return RandomStream{mix64(master_seed ^ mix64(fnv1a64(name)))};
}

/// Stream keyed by (master_seed, name, index), e.g. one stream per generation.
constexpr RandomStream derive_stream(std::uint64_t master_seed, std::string_view name, std::uint64_t index)
{
    return RandomStream{mix64(derive_stream(master_seed, name).state() + mix64(index + 0x632BE59BD9B4E019ULL))};
}

} // namespace codefarm
