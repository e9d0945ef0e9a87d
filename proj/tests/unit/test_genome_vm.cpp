#include <doctest.h>

#include <stdexcept>

#include "codefarm/genome_vm.hpp"
#include "codefarm/random.hpp"
#include "reference_vm.hpp"

using namespace codefarm;

namespace {

std::vector<std::uint8_t> bytes_of(const Genome& g) { return {g.code().begin(), g.code().end()}; }

} // namespace

TEST_CASE("decode_instruction maps byte mod 8")
{
    CHECK(decode_instruction(6) == Instruction::ReadBit);
    CHECK(decode_instruction(15) == Instruction::WriteBit);
    CHECK(decode_instruction(0) == Instruction::MoveRight);
    CHECK(decode_instruction(255) == Instruction::WriteBit);
    CHECK(decode_instruction(12) == Instruction::LoopOpen);
}

TEST_CASE("genome rejects empty code and round-trips hex")
{
    CHECK_THROWS_AS(Genome(std::vector<std::uint8_t>{}), std::invalid_argument);
    Genome g{0x00, 0xab, 0x7f, 0xff};
    CHECK(g.to_hex() == "00ab7fff");
    CHECK(Genome::from_hex("00ab7fff") == g);
    CHECK(Genome::from_hex("00AB7FFF") == g);
    CHECK_THROWS_AS(Genome::from_hex("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Genome::from_hex("zz"), std::invalid_argument);
    CHECK_THROWS_AS(Genome::from_hex(""), std::invalid_argument);
}

TEST_CASE("execute: single write of a zeroed cell")
{
    auto out = execute(Genome{7}, {});
    CHECK(to_string(out.output) == "0");
    CHECK(out.halted);
    CHECK(out.steps_used == 1);
}

TEST_CASE("execute: read then write echoes the bit")
{
    Genome g{6, 7};
    auto out = execute(g, parse_bits("1"));
    auto ref = reference::run(bytes_of(g), parse_bits("1"), kDefaultStepLimit);
    CHECK(to_string(ref.output) == "1");
    CHECK(out.output == ref.output);
    CHECK(out.halted);
}

TEST_CASE("execute: infinite loop stops at the step limit")
{
    Genome g{2, 4, 5};
    auto out = execute(g, parse_bits("0101"), 4096);
    auto ref = reference::run(bytes_of(g), parse_bits("0101"), 4096);
    CHECK_FALSE(ref.halted);
    CHECK(ref.steps == 4096);
    CHECK_FALSE(out.halted);
    CHECK(out.steps_used == 4096);
    CHECK(out.output.empty());
}

TEST_CASE("execute: rejects a zero step limit")
{
    CHECK_THROWS_AS(execute(Genome{7}, {}, 0), std::invalid_argument);
}

TEST_CASE("execute: reads past the end yield 0 and do not halt")
{
    auto out = execute(Genome{6, 7, 6, 7, 6, 7}, parse_bits("1"));
    CHECK(to_string(out.output) == "100");
    CHECK(out.halted);
}

TEST_CASE("execute: cells wrap mod 256")
{
    // dec from 0 gives 255 (odd), written as 1.
    CHECK(to_string(execute(Genome{3, 7}, {}).output) == "1");
    // 256 increments come back to 0.
    std::vector<std::uint8_t> code(256, 2);
    code.push_back(7);
    CHECK(to_string(execute(Genome(code), {}).output) == "0");
}

TEST_CASE("execute: tape extends to the left")
{
    // inc, left, left, write(0), right, right, write(1)
    CHECK(to_string(execute(Genome{2, 1, 1, 7, 0, 0, 7}, {}).output) == "01");
    std::vector<std::uint8_t> far(200, 1);
    far.push_back(2);
    far.push_back(7);
    CHECK(to_string(execute(Genome(far), {}).output) == "1");
}

TEST_CASE("execute: loop skipped when the cell is zero")
{
    // [ write ] write -> only the trailing write runs
    auto out = execute(Genome{4, 7, 5, 7}, {});
    CHECK(to_string(out.output) == "0");
    CHECK(out.steps_used == 2);
}

TEST_CASE("execute: unmatched brackets are no-ops")
{
    CHECK(to_string(execute(Genome{5, 7}, {}).output) == "0");
    CHECK(to_string(execute(Genome{4, 7}, {}).output) == "0");
    CHECK(to_string(execute(Genome{2, 5, 7}, {}).output) == "1");
}

TEST_CASE("execute: counted loop")
{
    // cell = 3; [ write dec ] -> writes 1 0 1, then halts
    auto out = execute(Genome{2, 2, 2, 4, 7, 3, 5}, {});
    CHECK(to_string(out.output) == "101");
    CHECK(out.halted);
}

TEST_CASE("execute: a program ending exactly at the limit still halts")
{
    auto out = execute(Genome{7, 7, 7}, {}, 3);
    CHECK(out.halted);
    CHECK(out.steps_used == 3);
    auto cut = execute(Genome{7, 7, 7}, {}, 2);
    CHECK_FALSE(cut.halted);
    CHECK(to_string(cut.output) == "00");
}

TEST_CASE("is_syntactically_trivial")
{
    CHECK(is_syntactically_trivial(Genome{0, 2, 7}));
    CHECK_FALSE(is_syntactically_trivial(Genome{6, 7}));
    CHECK(is_syntactically_trivial(Genome{6, 6, 6}));
    CHECK_FALSE(is_syntactically_trivial(Genome{14, 15}));
}

TEST_CASE("phenotype")
{
    auto constant = phenotype(Genome{7});
    CHECK(to_string(constant(parse_bits("1111"))) == "0");
    CHECK(to_string(constant({})) == "0");

    Genome echo2{6, 7, 6, 7};
    auto f = phenotype(echo2);
    for (const char* in : {"00", "01", "10", "11", "1101"}) {
        auto input = parse_bits(in);
        auto expected = reference::run(bytes_of(echo2), input, kDefaultStepLimit).output;
        CHECK(f(input) == expected);
        CHECK(to_string(f(input)) == std::string(in).substr(0, 2));
    }

    // Partial output survives the step limit.
    auto looping = phenotype(Genome{2, 4, 7, 5}, 10);
    CHECK(looping({}).size() > 0);
}

TEST_CASE("property: matches the reference interpreter on random programs")
{
    RandomStream rng{2024};
    for (int trial = 0; trial < 2000; ++trial) {
        std::size_t len = 1 + rng.uniform_below(48);
        std::vector<std::uint8_t> code(len);
        for (auto& b : code) b = rng.uniform_byte();
        BitString input(rng.uniform_below(20));
        for (auto& bit : input) bit = rng.bernoulli(0.5);
        std::size_t limit = 1 + rng.uniform_below(600);

        auto out = execute(Genome(code), input, limit);
        auto ref = reference::run(code, input, limit);
        REQUIRE(out.output == ref.output);
        REQUIRE(out.halted == ref.halted);
        REQUIRE(out.steps_used == ref.steps);
        // Step accounting and output growth bound.
        REQUIRE(out.steps_used <= limit);
        if (!out.halted) REQUIRE(out.steps_used == limit);
        if (out.steps_used < limit) REQUIRE(out.halted);
        REQUIRE(out.output.size() <= out.steps_used);
        // Determinism.
        REQUIRE(execute(Genome(code), input, limit) == out);
    }
}

TEST_CASE("property: a program without reads computes a constant function")
{
    RandomStream rng{99};
    int checked = 0;
    while (checked < 50) {
        std::vector<std::uint8_t> code(32);
        for (auto& b : code) {
            do b = rng.uniform_byte(); while (b % 8 == 6);
        }
        Genome g(code);
        REQUIRE(is_syntactically_trivial(g));
        auto f = phenotype(g, 512);
        auto first = f({});
        for (int i = 0; i < 100; ++i) {
            BitString input(rng.uniform_below(40));
            for (auto& bit : input) bit = rng.bernoulli(0.5);
            REQUIRE(f(input) == first);
        }
        ++checked;
    }
}
