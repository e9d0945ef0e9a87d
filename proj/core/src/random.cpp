#include "codefarm/random.hpp"

#include <stdexcept>

namespace codefarm {

// Lemire's nearly-divisionless bounded integer.
std::uint64_t RandomStream::uniform_below(std::uint64_t bound)
{
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be nonzero");
    __uint128_t m = static_cast<__uint128_t>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        std::uint64_t threshold = -bound % bound;
        while (low < threshold) {
            m = static_cast<__uint128_t>(next_u64()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t RandomStream::uniform_between(std::uint64_t lo, std::uint64_t hi)
{
    if (hi < lo) throw std::invalid_argument("uniform_between: empty range");
    std::uint64_t span = hi - lo;
    if (span == std::numeric_limits<std::uint64_t>::max()) return next_u64();
    return lo + uniform_below(span + 1);
}

} // namespace codefarm
