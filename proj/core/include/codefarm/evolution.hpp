#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "codefarm/genome_vm.hpp"
#include "codefarm/random.hpp"

namespace codefarm {

enum class CrossoverMethod { Single, Uniform };

struct EvolutionParams {
    double mutation_rate = 1.0 / 2048;  // per locus, in [0, 1]
    double crossover_rate = 0.5;        // in [0, 0.5]
    CrossoverMethod crossover_method = CrossoverMethod::Single;
    double elite_probability = 1.0 / 16;  // in [0, 1)

    void validate() const;

    friend bool operator==(const EvolutionParams&, const EvolutionParams&) = default;
};

/// Fitness-proportionate selection over a fixed weight vector. Building the
/// wheel is O(n); each spin is O(log n).
class RouletteWheel {
public:
    /// Throws std::invalid_argument if weights are empty, any is negative or
    /// non-finite, or they sum to zero.
    explicit RouletteWheel(std::span<const double> weights);

    std::size_t spin(RandomStream& rng) const;
    std::size_t size() const noexcept { return cumulative_.size(); }

private:
    std::vector<double> cumulative_;
};

/// Returns i with probability weights[i] / sum(weights).
std::size_t roulette_select(std::span<const double> weights, RandomStream& rng);

/// Each byte is replaced by a uniform random byte with probability rate.
Genome mutate_genome(Genome genome, double rate, RandomStream& rng);

/// Swaps a[cut..] with b[cut..].
void swap_suffix(std::span<std::uint8_t> a, std::span<std::uint8_t> b, std::size_t cut);

/// With probability rate, swaps suffixes starting at a cut drawn uniformly
/// from [1, len - 1] (or 1 when len == 1). Lengths must match.
void single_crossover_inplace(std::span<std::uint8_t> a, std::span<std::uint8_t> b, double rate,
                              RandomStream& rng);

/// Swaps each locus independently with probability rate. Lengths must match.
void uniform_crossover_inplace(std::span<std::uint8_t> a, std::span<std::uint8_t> b, double rate,
                               RandomStream& rng);

/// Throws std::invalid_argument on a length mismatch or genomes shorter than 2.
std::pair<Genome, Genome> single_crossover(Genome g1, Genome g2, double rate, RandomStream& rng);

/// Throws std::invalid_argument on a length mismatch.
std::pair<Genome, Genome> uniform_crossover(Genome g1, Genome g2, double rate, RandomStream& rng);

/// The streams a reproduction step draws from.
struct EvolutionStreams {
    RandomStream& selection;
    RandomStream& elite_coin;
    RandomStream& mutation;
    RandomStream& crossover;
};

/// Builds the next population pair by pair. Each parent comes from the elite
/// list (uniformly) with probability elite_probability, otherwise by roulette
/// over the weak scores. Both copies are mutated, then crossed over.
/// Throws std::invalid_argument on an odd or undersized population, or scores
/// not aligned with it.
std::vector<Genome> next_generation(std::span<const Genome> old_population, std::span<const double> weak_scores,
                                    std::span<const Genome> elites, const EvolutionParams& params,
                                    const EvolutionStreams& streams);

/// Same, drawing everything from a single stream.
std::vector<Genome> next_generation(std::span<const Genome> old_population, std::span<const double> weak_scores,
                                    std::span<const Genome> elites, const EvolutionParams& params,
                                    RandomStream& rng);

} // namespace codefarm
