#pragma once

// Allele-frequency experiment: a (k+1)-bit genotype whose first gene either
// switches the phenotype to constant false (allele 0) or to "return input bit
// number <genes 1..k>" (allele 1). Targets are regenerated every generation.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "codefarm/evolution.hpp"
#include "codefarm/random.hpp"

namespace codefarm::demo {

/// Genes as 0/1 bytes; gene 0 is the control gene.
using Genotype = std::vector<std::uint8_t>;
using Population = std::vector<Genotype>;

/// Fixed-size bit vector packed into 64-bit words.
class PackedBits {
public:
    PackedBits() = default;
    explicit PackedBits(std::size_t size) : words_((size + 63) / 64, 0), size_{size} {}

    std::size_t size() const noexcept { return size_; }
    bool operator[](std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    void set(std::size_t i, bool value);

    /// Fills every bit with fair coin flips.
    void randomize(RandomStream& rng);

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

struct Datum {
    PackedBits input;
    bool output = false;
};

using Dataset = std::vector<Datum>;

struct Config {
    CrossoverMethod crossover_method = CrossoverMethod::Single;
    double mutation_rate = 1.0 / (1 << 11);
    double crossover_rate = 1.0 / (1 << 1);
    double selection_strength = 1.0 / (1 << 3);
    std::size_t num_genes = 21;
    std::size_t num_inputs = std::size_t{1} << 20;
    std::size_t num_genotypes = 1 << 10;
    std::size_t num_examples = 1;
    std::size_t num_generations = 800;
    std::size_t report_interval = 20;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument on the first violated constraint.
    void validate() const;
};

/// Input position read by an allele-1 genotype; genes 1..k, most significant first.
std::size_t decode_index(const Genotype& genotype);

std::function<bool(const PackedBits&)> decode(const Genotype& genotype);

/// +1 per matching datum, -1 per mismatch, rescaled to [-1, 1] and mapped to
/// 1 + epsilon * d.
std::vector<double> fitness(const Population& population, const Dataset& dataset, double selection_strength);

Population initialize_population(const Config& config, RandomStream& rng);

/// Regenerates inputs and outputs in place.
void generate_dataset(const Config& config, Dataset& dataset, RandomStream& rng);

/// Flips each gene with probability rate.
void mutate(Genotype& genotype, double rate, RandomStream& rng);

/// Roulette selection of parent pairs, mutation of each copy, then crossover.
Population genetic_operators(const Config& config, std::span<const double> scores, const Population& old_population,
                             RandomStream& rng);

struct ReportRow {
    std::size_t generation = 0;
    std::size_t allele0 = 0;  // genotype counts
    std::size_t allele1 = 0;
    int allele0_percent = 0;  // floor(100 * count / num_genotypes)
    int allele1_percent = 0;
};

struct Report {
    std::size_t num_genotypes = 0;
    std::vector<ReportRow> rows;
    int allele0_average = 0;  // integer footer value
    int allele1_average = 0;
    double allele0_mean = 0.0;  // exact mean percentage over rows
    double allele1_mean = 0.0;
};

ReportRow count_alleles(const Population& population, std::size_t generation);

Report run(const Config& config);

/// Three-column table: header, one row per report, separator, Average row.
std::string format_report(const Report& report);

/// `generation,allele0,allele1` rows with integer percentages.
std::string format_report_csv(const Report& report);

} // namespace codefarm::demo
