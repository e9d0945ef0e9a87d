#include "codefarm/genome_vm.hpp"

#include <algorithm>
#include <stdexcept>

namespace codefarm {

std::string to_string(const BitString& bits)
{
    std::string text(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) text[i] = '1';
    }
    return text;
}

BitString parse_bits(std::string_view text)
{
    BitString bits;
    bits.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit string: unexpected character at offset " + std::to_string(i));
        }
        bits.push_back(c == '1' ? 1 : 0);
    }
    return bits;
}

Genome::Genome(std::vector<std::uint8_t> code) : code_{std::move(code)}
{
    if (code_.empty()) throw std::invalid_argument("genome must contain at least one byte");
}

Genome::Genome(std::initializer_list<std::uint8_t> code) : Genome(std::vector<std::uint8_t>(code)) {}

std::string Genome::to_hex() const
{
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string hex;
    hex.reserve(code_.size() * 2);
    for (auto byte : code_) {
        hex.push_back(kDigits[byte >> 4]);
        hex.push_back(kDigits[byte & 0xF]);
    }
    return hex;
}

namespace {

int hex_value(char c)
{
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

// Tape unbounded in both directions, grown on demand.
class Tape {
public:
    Tape() : cells_(64, 0), head_{32} {}

    std::uint8_t& cell() { return cells_[head_]; }

    void right()
    {
        if (++head_ == cells_.size()) cells_.resize(cells_.size() * 2, 0);
    }

    void left()
    {
        if (head_ == 0) {
            std::size_t grow = cells_.size();
            cells_.insert(cells_.begin(), grow, 0);
            head_ = grow;
        }
        --head_;
    }

private:
    std::vector<std::uint8_t> cells_;
    std::size_t head_;
};

constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

std::vector<std::size_t> match_brackets(std::span<const std::uint8_t> code)
{
    std::vector<std::size_t> match(code.size(), kUnmatched);
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < code.size(); ++i) {
        auto op = decode_instruction(code[i]);
        if (op == Instruction::LoopOpen) {
            open.push_back(i);
        } else if (op == Instruction::LoopClose && !open.empty()) {
            match[i] = open.back();
            match[open.back()] = i;
            open.pop_back();
        }
    }
    return match;
}

} // namespace

Genome Genome::from_hex(std::string_view hex)
{
    if (hex.empty() || hex.size() % 2 != 0) {
        throw std::invalid_argument("genome hex must have a nonzero even length");
    }
    std::vector<std::uint8_t> code(hex.size() / 2);
    for (std::size_t i = 0; i < code.size(); ++i) {
        int hi = hex_value(hex[2 * i]);
        int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            throw std::invalid_argument("genome hex: invalid digit near offset " + std::to_string(2 * i));
        }
        code[i] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
    return Genome(std::move(code));
}

VmOutcome execute(const Genome& genome, const BitString& input, std::size_t step_limit)
{
    if (step_limit == 0) throw std::invalid_argument("step_limit must be at least 1");

    auto code = genome.code();
    auto match = match_brackets(code);
    Tape tape;
    VmOutcome out;
    std::size_t pc = 0;
    std::size_t read_pos = 0;

    while (pc < code.size()) {
        if (out.steps_used == step_limit) return out;
        ++out.steps_used;
        switch (decode_instruction(code[pc])) {
        case Instruction::MoveRight:
            tape.right();
            break;
        case Instruction::MoveLeft:
            tape.left();
            break;
        case Instruction::Increment:
            ++tape.cell();
            break;
        case Instruction::Decrement:
            --tape.cell();
            break;
        case Instruction::LoopOpen:
            if (tape.cell() == 0 && match[pc] != kUnmatched) pc = match[pc];
            break;
        case Instruction::LoopClose:
            if (tape.cell() != 0 && match[pc] != kUnmatched) {
                pc = match[pc];
                continue;
            }
            break;
        case Instruction::ReadBit:
            tape.cell() = read_pos < input.size() ? input[read_pos] : 0;
            ++read_pos;
            break;
        case Instruction::WriteBit:
            out.output.push_back(tape.cell() & 1U);
            break;
        }
        ++pc;
    }
    out.halted = true;
    return out;
}

bool is_syntactically_trivial(const Genome& genome) noexcept
{
    auto code = genome.code();
    bool reads = std::any_of(code.begin(), code.end(),
                             [](auto b) { return decode_instruction(b) == Instruction::ReadBit; });
    bool writes = std::any_of(code.begin(), code.end(),
                              [](auto b) { return decode_instruction(b) == Instruction::WriteBit; });
    return !reads || !writes;
}

Phenotype phenotype(Genome genome, std::size_t step_limit)
{
    if (step_limit == 0) throw std::invalid_argument("step_limit must be at least 1");
    return [genome = std::move(genome), step_limit](const BitString& input) {
        return execute(genome, input, step_limit).output;
    };
}

} // namespace codefarm
