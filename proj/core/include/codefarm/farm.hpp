#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codefarm/datasets.hpp"
#include "codefarm/elites.hpp"
#include "codefarm/evolution.hpp"
#include "codefarm/fitness.hpp"
#include "codefarm/genome_vm.hpp"
#include "codefarm/random.hpp"

namespace codefarm {

struct Termination {
    std::size_t max_generations = 1000;
    std::size_t elite_target = 0;  // 0 disables the elite-count stop

    friend bool operator==(const Termination&, const Termination&) = default;
};

struct FarmConfig {
    std::size_t population_size = 256;
    std::size_t genome_length = kDefaultGenomeLength;
    std::size_t step_limit = kDefaultStepLimit;
    DatasetConfig dataset;
    FitnessParams fitness;
    EvolutionParams evolution;
    std::size_t test_input_count = kDefaultTestInputCount;
    std::size_t test_input_max_len = 64;
    Termination termination;
    std::uint64_t master_seed = 1;

    /// Throws ConfigError naming the first invalid field.
    void validate() const;

    friend bool operator==(const FarmConfig&, const FarmConfig&) = default;
};

/// Parses `key = value` lines; `#` starts a comment. Unknown keys, malformed
/// values, and invalid configurations raise ConfigError.
FarmConfig parse_farm_config(std::string_view text);
FarmConfig load_farm_config(const std::filesystem::path& path);

/// Canonical text form; parse_farm_config(format_farm_config(c)) == c.
std::string format_farm_config(const FarmConfig& config);

/// Hash of every field that shapes the trajectory. Termination settings are
/// excluded so a run can be resumed with a different stopping point.
std::string config_digest(const FarmConfig& config);

/// Independent named streams derived from the master seed.
struct FarmStreams {
    static constexpr std::array<std::string_view, 7> kNames = {
        "init", "dataset", "selection", "mutation", "crossover", "elite_coin", "test_inputs"};

    RandomStream init;
    RandomStream dataset;
    RandomStream selection;
    RandomStream mutation;
    RandomStream crossover;
    RandomStream elite_coin;
    RandomStream test_inputs;

    static FarmStreams derive(std::uint64_t master_seed);

    /// Stream by name; throws std::out_of_range on an unknown name.
    RandomStream& named(std::string_view name);
    const RandomStream& named(std::string_view name) const;

    friend bool operator==(const FarmStreams&, const FarmStreams&) = default;
};

struct FarmState {
    std::size_t generation = 0;
    std::vector<Genome> population;
    ScoreVector scores;  // scores of the most recently evaluated generation
    std::vector<Genome> seed_list;
    std::vector<EliteEntry> elites;
    TestInputs test_inputs;
    FarmStreams streams;

    friend bool operator==(const FarmState&, const FarmState&) = default;
};

/// Random initial population, empty seed list and elite ledger, fresh test
/// inputs.
FarmState init_farm(const FarmConfig& config);

/// One pass of the loop: fresh dataset, scoring, seed recording, elite update,
/// reproduction.
FarmState step_generation(FarmState state, const FarmConfig& config);

/// Appends the fittest genome (lowest index on ties).
void record_seed(std::span<const Genome> population, const ScoreVector& scores, std::vector<Genome>& seed_list);

/// Most recent n seeds, oldest first. With dedup, walks back from the newest
/// entry and skips genomes whose signature was already kept.
std::vector<Genome> export_seeds(std::span<const Genome> seed_list, const TestInputs& test_inputs,
                                 std::size_t step_limit, std::size_t n, bool dedup);

/// Elites added per generation over the last `window` generations ending at
/// current_generation. Throws std::invalid_argument if window is zero.
double progress_metric(std::span<const EliteEntry> elites, std::size_t window, std::size_t current_generation);

struct RunOptions {
    std::optional<std::filesystem::path> snapshot_in;
    std::optional<std::filesystem::path> snapshot_out;
    std::ostream* progress_log = nullptr;
};

/// Resumes from a snapshot or starts fresh, steps until a termination
/// condition holds, then optionally writes a snapshot.
FarmState run(const FarmConfig& config, const RunOptions& options = {});

/// True when the state satisfies a stop condition.
bool should_stop(const FarmState& state, const FarmConfig& config);

} // namespace codefarm
