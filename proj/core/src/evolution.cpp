#include "codefarm/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "codefarm/errors.hpp"

namespace codefarm {

void EvolutionParams::validate() const
{
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
        throw ConfigError("evolution.mutation_rate", "must lie in [0, 1]");
    }
    if (!(crossover_rate >= 0.0 && crossover_rate <= 0.5)) {
        throw ConfigError("evolution.crossover_rate", "must lie in [0, 0.5]");
    }
    if (!(elite_probability >= 0.0 && elite_probability < 1.0)) {
        throw ConfigError("evolution.elite_probability", "must lie in [0, 1)");
    }
}

RouletteWheel::RouletteWheel(std::span<const double> weights)
{
    if (weights.empty()) throw std::invalid_argument("roulette: no weights");
    cumulative_.reserve(weights.size());
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("roulette: weights must be finite and >= 0");
        total += w;
        cumulative_.push_back(total);
    }
    if (!(total > 0.0)) throw std::invalid_argument("roulette: weights sum to zero");
}

std::size_t RouletteWheel::spin(RandomStream& rng) const
{
    double target = rng.uniform01() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    // Rounding can leave target == total; fall back to the last nonzero slot.
    if (it == cumulative_.end()) {
        it = std::lower_bound(cumulative_.begin(), cumulative_.end(), cumulative_.back());
    }
    return static_cast<std::size_t>(it - cumulative_.begin());
}

std::size_t roulette_select(std::span<const double> weights, RandomStream& rng)
{
    return RouletteWheel(weights).spin(rng);
}

Genome mutate_genome(Genome genome, double rate, RandomStream& rng)
{
    if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("mutate_genome: rate must lie in [0, 1]");
    for (auto& byte : genome.code()) {
        if (rng.bernoulli(rate)) byte = rng.uniform_byte();
    }
    return genome;
}

void swap_suffix(std::span<std::uint8_t> a, std::span<std::uint8_t> b, std::size_t cut)
{
    if (a.size() != b.size()) throw std::invalid_argument("crossover: length mismatch");
    for (std::size_t i = cut; i < a.size(); ++i) std::swap(a[i], b[i]);
}

void single_crossover_inplace(std::span<std::uint8_t> a, std::span<std::uint8_t> b, double rate,
                              RandomStream& rng)
{
    if (a.size() != b.size()) throw std::invalid_argument("crossover: length mismatch");
    if (!rng.bernoulli(rate)) return;
    std::size_t upper = std::max<std::size_t>(1, a.size() - 1);
    swap_suffix(a, b, rng.uniform_between(1, upper));
}

void uniform_crossover_inplace(std::span<std::uint8_t> a, std::span<std::uint8_t> b, double rate,
                               RandomStream& rng)
{
    if (a.size() != b.size()) throw std::invalid_argument("crossover: length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (rng.bernoulli(rate)) std::swap(a[i], b[i]);
    }
}

std::pair<Genome, Genome> single_crossover(Genome g1, Genome g2, double rate, RandomStream& rng)
{
    if (g1.size() != g2.size()) throw std::invalid_argument("single_crossover: length mismatch");
    if (g1.size() < 2) throw std::invalid_argument("single_crossover: genomes need at least 2 loci");
    single_crossover_inplace(g1.code(), g2.code(), rate, rng);
    return {std::move(g1), std::move(g2)};
}

std::pair<Genome, Genome> uniform_crossover(Genome g1, Genome g2, double rate, RandomStream& rng)
{
    if (g1.size() != g2.size()) throw std::invalid_argument("uniform_crossover: length mismatch");
    uniform_crossover_inplace(g1.code(), g2.code(), rate, rng);
    return {std::move(g1), std::move(g2)};
}

std::vector<Genome> next_generation(std::span<const Genome> old_population, std::span<const double> weak_scores,
                                    std::span<const Genome> elites, const EvolutionParams& params,
                                    const EvolutionStreams& streams)
{
    if (old_population.size() < 2 || old_population.size() % 2 != 0) {
        throw std::invalid_argument("next_generation: population size must be even and at least 2");
    }
    if (weak_scores.size() != old_population.size()) {
        throw std::invalid_argument("next_generation: scores not aligned with population");
    }
    params.validate();

    RouletteWheel wheel(weak_scores);
    auto pick_parent = [&]() -> const Genome& {
        if (!elites.empty() && streams.elite_coin.bernoulli(params.elite_probability)) {
            return elites[streams.elite_coin.uniform_below(elites.size())];
        }
        return old_population[wheel.spin(streams.selection)];
    };

    std::vector<Genome> next;
    next.reserve(old_population.size());
    for (std::size_t slot = 0; slot < old_population.size(); slot += 2) {
        Genome first = pick_parent();
        Genome second = pick_parent();
        first = mutate_genome(std::move(first), params.mutation_rate, streams.mutation);
        second = mutate_genome(std::move(second), params.mutation_rate, streams.mutation);
        if (params.crossover_method == CrossoverMethod::Single) {
            single_crossover_inplace(first.code(), second.code(), params.crossover_rate, streams.crossover);
        } else {
            uniform_crossover_inplace(first.code(), second.code(), params.crossover_rate, streams.crossover);
        }
        next.push_back(std::move(first));
        next.push_back(std::move(second));
    }
    return next;
}

std::vector<Genome> next_generation(std::span<const Genome> old_population, std::span<const double> weak_scores,
                                    std::span<const Genome> elites, const EvolutionParams& params,
                                    RandomStream& rng)
{
    return next_generation(old_population, weak_scores, elites, params, EvolutionStreams{rng, rng, rng, rng});
}

} // namespace codefarm
