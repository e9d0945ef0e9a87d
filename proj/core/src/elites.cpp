#include "codefarm/elites.hpp"

#include <algorithm>
#include <stdexcept>

#include "codefarm/datasets.hpp"

namespace codefarm {

TestInputs make_test_inputs(std::size_t count, RandomStream& rng, std::size_t max_len)
{
    if (count < 1) throw std::invalid_argument("make_test_inputs: count must be at least 1");
    TestInputs inputs;
    inputs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) inputs.push_back(sample_universal_string(rng, max_len));
    return inputs;
}

Signature compute_signature(const Genome& genome, const TestInputs& test_inputs, std::size_t step_limit)
{
    Signature signature;
    signature.reserve(test_inputs.size());
    for (const auto& input : test_inputs) {
        auto outcome = execute(genome, input, step_limit);
        signature.push_back({std::move(outcome.output), outcome.halted});
    }
    return signature;
}

std::string encode_signature_entry(const SignatureEntry& entry)
{
    std::string text = to_string(entry.output);
    if (!entry.halted) text.push_back('!');
    return text;
}

SignatureEntry decode_signature_entry(std::string_view text)
{
    SignatureEntry entry;
    if (!text.empty() && text.back() == '!') {
        entry.halted = false;
        text.remove_suffix(1);
    }
    entry.output = parse_bits(text);
    return entry;
}

bool maybe_add_elite(std::vector<EliteEntry>& ledger, std::span<const Genome> population,
                     const ScoreVector& scores, std::span<const std::uint8_t> trivial_flags,
                     const TestInputs& test_inputs, std::size_t generation, std::size_t step_limit)
{
    if (scores.size() != population.size() || trivial_flags.size() != population.size()) {
        throw std::invalid_argument("maybe_add_elite: scores and flags must align with the population");
    }
    std::size_t best = fittest_index(scores);
    if (trivial_flags[best]) return false;

    Signature signature = compute_signature(population[best], test_inputs, step_limit);
    bool seen = std::any_of(ledger.begin(), ledger.end(),
                            [&](const EliteEntry& e) { return e.signature == signature; });
    if (seen) return false;

    ledger.push_back({population[best], std::move(signature), generation});
    return true;
}

} // namespace codefarm
