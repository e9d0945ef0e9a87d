#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codefarm/bits.hpp"

namespace codefarm {

/// A program: a nonempty byte string. Every byte string is a valid program.
class Genome {
public:
    explicit Genome(std::vector<std::uint8_t> code);
    Genome(std::initializer_list<std::uint8_t> code);

    std::span<const std::uint8_t> code() const noexcept { return code_; }
    std::span<std::uint8_t> code() noexcept { return code_; }
    std::size_t size() const noexcept { return code_.size(); }
    std::uint8_t operator[](std::size_t i) const { return code_[i]; }

    /// Lowercase hex, two characters per byte.
    std::string to_hex() const;
    static Genome from_hex(std::string_view hex);

    friend bool operator==(const Genome&, const Genome&) = default;

private:
    std::vector<std::uint8_t> code_;
};

enum class Instruction : std::uint8_t {
    MoveRight = 0,
    MoveLeft = 1,
    Increment = 2,
    Decrement = 3,
    LoopOpen = 4,
    LoopClose = 5,
    ReadBit = 6,
    WriteBit = 7,
};

constexpr Instruction decode_instruction(std::uint8_t byte) noexcept
{
    return static_cast<Instruction>(byte & 7U);
}

struct VmOutcome {
    BitString output;
    bool halted = false;
    std::size_t steps_used = 0;

    friend bool operator==(const VmOutcome&, const VmOutcome&) = default;
};

inline constexpr std::size_t kDefaultStepLimit = 4096;
inline constexpr std::size_t kDefaultGenomeLength = 256;

/// Runs the tape machine until the program ends or step_limit instructions
/// have executed. Throws std::invalid_argument if step_limit is zero.
VmOutcome execute(const Genome& genome, const BitString& input, std::size_t step_limit = kDefaultStepLimit);

/// True when the program has no read instruction or no write instruction.
bool is_syntactically_trivial(const Genome& genome) noexcept;

using Phenotype = std::function<BitString(const BitString&)>;

/// The function a genome computes. Partial output is kept when the step
/// limit is hit.
Phenotype phenotype(Genome genome, std::size_t step_limit = kDefaultStepLimit);

} // namespace codefarm
