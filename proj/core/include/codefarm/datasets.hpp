#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "codefarm/bits.hpp"
#include "codefarm/random.hpp"

namespace codefarm {

struct Datum {
    BitString input;
    BitString output;

    friend bool operator==(const Datum&, const Datum&) = default;
};

using Dataset = std::vector<Datum>;

enum class DatasetMode { Universal, Fixed };

struct DatasetConfig {
    DatasetMode mode = DatasetMode::Fixed;
    std::size_t num_examples = 16;
    std::size_t fixed_input_len = 32;
    std::size_t fixed_output_len = 8;
    std::size_t universal_max_len = 64;

    /// Throws ConfigError naming the first bad field.
    void validate() const;

    friend bool operator==(const DatasetConfig&, const DatasetConfig&) = default;
};

/// Draws from the universal density 2^(-2l-1) over binary strings of length
/// l, restricted by rejection to l <= max_len.
BitString sample_universal_string(RandomStream& rng, std::size_t max_len);

/// Fresh target dataset. Fixed mode flips fair coins for every bit; universal
/// mode draws both sides from sample_universal_string.
Dataset generate_dataset(const DatasetConfig& config, RandomStream& rng);

/// Debug dump: one `<input> -> <output>` line per datum.
void write_dataset(std::ostream& out, const Dataset& dataset);

} // namespace codefarm
