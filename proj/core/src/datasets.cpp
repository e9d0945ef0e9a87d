#include "codefarm/datasets.hpp"

#include <bit>
#include <ostream>
#include <stdexcept>

#include "codefarm/errors.hpp"

namespace codefarm {

void DatasetConfig::validate() const
{
    if (num_examples < 1) throw ConfigError("dataset.num_examples", "must be at least 1");
    if (universal_max_len < 1) throw ConfigError("dataset.universal_max_len", "must be at least 1");
    if (mode == DatasetMode::Fixed) {
        if (fixed_input_len < 1) throw ConfigError("dataset.fixed_input_len", "must be at least 1");
        if (fixed_output_len < 1) throw ConfigError("dataset.fixed_output_len", "must be at least 1");
    }
}

namespace {

// Number of tails before the first head of a fair coin: P(l) = 2^-(l+1).
std::size_t geometric_length(RandomStream& rng)
{
    std::size_t length = 0;
    for (;;) {
        std::uint64_t word = rng.next_u64();
        if (word != 0) return length + static_cast<std::size_t>(std::countr_zero(word));
        length += 64;
    }
}

BitString coin_flips(RandomStream& rng, std::size_t count)
{
    BitString bits(count);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (i % 64 == 0) word = rng.next_u64();
        bits[i] = static_cast<std::uint8_t>(word & 1U);
        word >>= 1;
    }
    return bits;
}

} // namespace

BitString sample_universal_string(RandomStream& rng, std::size_t max_len)
{
    if (max_len < 1) throw std::invalid_argument("sample_universal_string: max_len must be at least 1");
    std::size_t length;
    do {
        length = geometric_length(rng);
    } while (length > max_len);
    return coin_flips(rng, length);
}

Dataset generate_dataset(const DatasetConfig& config, RandomStream& rng)
{
    config.validate();
    Dataset dataset;
    dataset.reserve(config.num_examples);
    for (std::size_t i = 0; i < config.num_examples; ++i) {
        if (config.mode == DatasetMode::Fixed) {
            BitString input = coin_flips(rng, config.fixed_input_len);
            BitString output = coin_flips(rng, config.fixed_output_len);
            dataset.push_back({std::move(input), std::move(output)});
        } else {
            BitString input = sample_universal_string(rng, config.universal_max_len);
            BitString output = sample_universal_string(rng, config.universal_max_len);
            dataset.push_back({std::move(input), std::move(output)});
        }
    }
    return dataset;
}

void write_dataset(std::ostream& out, const Dataset& dataset)
{
    for (const auto& datum : dataset) {
        out << to_string(datum.input) << " -> " << to_string(datum.output) << '\n';
    }
}

} // namespace codefarm
