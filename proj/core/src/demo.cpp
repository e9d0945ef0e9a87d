#include "codefarm/demo.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "codefarm/fitness.hpp"

namespace codefarm::demo {

void PackedBits::set(std::size_t i, bool value)
{
    std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value) words_[i / 64] |= mask;
    else words_[i / 64] &= ~mask;
}

void PackedBits::randomize(RandomStream& rng)
{
    for (auto& word : words_) word = rng.next_u64();
    if (size_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
}

void Config::validate() const
{
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) throw std::invalid_argument("demo: mutation_rate must lie in [0, 1]");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 0.5)) throw std::invalid_argument("demo: crossover_rate must lie in [0, 0.5]");
    if (!(selection_strength > 0.0)) throw std::invalid_argument("demo: selection_strength must be positive");
    if (num_genes <= 1 || num_genes > 31) throw std::invalid_argument("demo: num_genes must lie in [2, 31]");
    if (num_inputs != (std::size_t{1} << (num_genes - 1))) throw std::invalid_argument("demo: num_inputs must be 2^(num_genes - 1)");
    if (num_genotypes <= 1 || num_genotypes % 2 != 0) throw std::invalid_argument("demo: num_genotypes must be even and > 1");
    if (num_examples < 1) throw std::invalid_argument("demo: num_examples must be positive");
    if (report_interval < 1) throw std::invalid_argument("demo: report_interval must be positive");
}

std::size_t decode_index(const Genotype& genotype)
{
    std::size_t index = 0;
    for (std::size_t i = 1; i < genotype.size(); ++i) {
        index <<= 1;
        index |= genotype[i] & 1U;
    }
    return index;
}

std::function<bool(const PackedBits&)> decode(const Genotype& genotype)
{
    if (genotype.empty() || !genotype[0]) return [](const PackedBits&) { return false; };
    std::size_t index = decode_index(genotype);
    return [index](const PackedBits& input) { return input[index]; };
}

std::vector<double> fitness(const Population& population, const Dataset& dataset, double selection_strength)
{
    if (population.empty() || dataset.empty()) throw std::invalid_argument("demo fitness: empty population or dataset");
    std::vector<double> raw(population.size(), 0.0);
    for (std::size_t i = 0; i < population.size(); ++i) {
        const Genotype& g = population[i];
        bool constant = !g[0];
        std::size_t index = constant ? 0 : decode_index(g);
        double score = 0.0;
        for (const auto& datum : dataset) {
            bool out = constant ? false : datum.input[index];
            score += datum.output == out ? 1.0 : -1.0;
        }
        raw[i] = score;
    }
    return scale_scores(std::move(raw), selection_strength).weak;
}

Population initialize_population(const Config& config, RandomStream& rng)
{
    Population population(config.num_genotypes, Genotype(config.num_genes));
    for (auto& genotype : population) {
        for (auto& bit : genotype) bit = rng.bernoulli(0.5) ? 1 : 0;
    }
    return population;
}

void generate_dataset(const Config& config, Dataset& dataset, RandomStream& rng)
{
    dataset.resize(config.num_examples);
    for (auto& datum : dataset) {
        if (datum.input.size() != config.num_inputs) datum.input = PackedBits(config.num_inputs);
        datum.input.randomize(rng);
        datum.output = rng.bernoulli(0.5);
    }
}

void mutate(Genotype& genotype, double rate, RandomStream& rng)
{
    for (auto& bit : genotype) {
        if (rng.bernoulli(rate)) bit ^= 1U;
    }
}

Population genetic_operators(const Config& config, std::span<const double> scores, const Population& old_population,
                             RandomStream& rng)
{
    RouletteWheel selection(scores);
    Population next(old_population.size());
    for (std::size_t i = 0; i + 1 < old_population.size(); i += 2) {
        next[i] = old_population[selection.spin(rng)];
        next[i + 1] = old_population[selection.spin(rng)];
        mutate(next[i], config.mutation_rate, rng);
        mutate(next[i + 1], config.mutation_rate, rng);
        if (config.crossover_method == CrossoverMethod::Single) {
            single_crossover_inplace(next[i], next[i + 1], config.crossover_rate, rng);
        } else {
            uniform_crossover_inplace(next[i], next[i + 1], config.crossover_rate, rng);
        }
    }
    return next;
}

ReportRow count_alleles(const Population& population, std::size_t generation)
{
    ReportRow row;
    row.generation = generation;
    for (const auto& g : population) {
        if (g[0]) ++row.allele1;
        else ++row.allele0;
    }
    auto n = population.size();
    row.allele0_percent = static_cast<int>(100 * row.allele0 / n);
    row.allele1_percent = static_cast<int>(100 * row.allele1 / n);
    return row;
}

Report run(const Config& config)
{
    config.validate();
    RandomStream rng = derive_stream(config.seed, "demo");

    Report report;
    report.num_genotypes = config.num_genotypes;
    Population population = initialize_population(config, rng);
    Dataset dataset;
    std::size_t sum0 = 0;
    std::size_t sum1 = 0;

    for (std::size_t generation = 0;; ++generation) {
        if (generation % config.report_interval == 0) {
            report.rows.push_back(count_alleles(population, generation));
            sum0 += report.rows.back().allele0;
            sum1 += report.rows.back().allele1;
        }
        if (generation >= config.num_generations) break;
        generate_dataset(config, dataset, rng);
        auto scores = fitness(population, dataset, config.selection_strength);
        population = genetic_operators(config, scores, population, rng);
    }

    std::size_t divisor = report.rows.size() * config.num_genotypes;
    report.allele0_average = static_cast<int>(100 * sum0 / divisor);
    report.allele1_average = static_cast<int>(100 * sum1 / divisor);
    report.allele0_mean = 100.0 * static_cast<double>(sum0) / static_cast<double>(divisor);
    report.allele1_mean = 100.0 * static_cast<double>(sum1) / static_cast<double>(divisor);
    return report;
}

std::string format_report(const Report& report)
{
    std::ostringstream out;
    out << "Generation Allele:0 Allele:1\n"
        << "---------- -------- --------\n";
    for (const auto& row : report.rows) {
        out << std::setw(10) << row.generation << " " << std::setw(7) << row.allele0_percent << "% " << std::setw(7)
            << row.allele1_percent << "%\n";
    }
    out << "---------- -------- --------\n"
        << "   Average " << std::setw(7) << report.allele0_average << "% " << std::setw(7) << report.allele1_average
        << "%\n";
    return out.str();
}

std::string format_report_csv(const Report& report)
{
    std::ostringstream out;
    out << "generation,allele0,allele1\n";
    for (const auto& row : report.rows) {
        out << row.generation << ',' << row.allele0_percent << ',' << row.allele1_percent << '\n';
    }
    return out.str();
}

} // namespace codefarm::demo
