#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codefarm/bits.hpp"
#include "codefarm/fitness.hpp"
#include "codefarm/genome_vm.hpp"
#include "codefarm/random.hpp"

namespace codefarm {

/// Persistent probe inputs, generated once per farm.
using TestInputs = std::vector<BitString>;

/// Output on one test input. A non-halting run keeps its partial output.
struct SignatureEntry {
    BitString output;
    bool halted = true;

    friend bool operator==(const SignatureEntry&, const SignatureEntry&) = default;
};

/// A program's outputs over the test inputs; a probabilistic phenotype identity.
using Signature = std::vector<SignatureEntry>;

struct EliteEntry {
    Genome genome;
    Signature signature;
    std::size_t generation_added = 0;

    friend bool operator==(const EliteEntry&, const EliteEntry&) = default;
};

inline constexpr std::size_t kDefaultTestInputCount = 32;

/// Throws std::invalid_argument if count or max_len is zero.
TestInputs make_test_inputs(std::size_t count, RandomStream& rng, std::size_t max_len);

Signature compute_signature(const Genome& genome, const TestInputs& test_inputs,
                            std::size_t step_limit = kDefaultStepLimit);

/// ASCII 0/1 per output, with a trailing '!' when the run did not halt.
std::string encode_signature_entry(const SignatureEntry& entry);
SignatureEntry decode_signature_entry(std::string_view text);

/// Adds the fittest genome (lowest index on ties) to the ledger unless it is
/// trivial-flagged or its signature is already present. Returns true when an
/// entry was added.
bool maybe_add_elite(std::vector<EliteEntry>& ledger, std::span<const Genome> population,
                     const ScoreVector& scores, std::span<const std::uint8_t> trivial_flags,
                     const TestInputs& test_inputs, std::size_t generation,
                     std::size_t step_limit = kDefaultStepLimit);

} // namespace codefarm
