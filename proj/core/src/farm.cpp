#include "codefarm/farm.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "codefarm/snapshot.hpp"

namespace codefarm {

FarmStreams FarmStreams::derive(std::uint64_t master_seed)
{
    FarmStreams s;
    for (auto name : kNames) s.named(name) = derive_stream(master_seed, name);
    return s;
}

RandomStream& FarmStreams::named(std::string_view name)
{
    return const_cast<RandomStream&>(std::as_const(*this).named(name));
}

const RandomStream& FarmStreams::named(std::string_view name) const
{
    if (name == "init") return init;
    if (name == "dataset") return dataset;
    if (name == "selection") return selection;
    if (name == "mutation") return mutation;
    if (name == "crossover") return crossover;
    if (name == "elite_coin") return elite_coin;
    if (name == "test_inputs") return test_inputs;
    throw std::out_of_range("unknown random stream '" + std::string(name) + "'");
}

FarmState init_farm(const FarmConfig& config)
{
    config.validate();
    FarmState state;
    state.streams = FarmStreams::derive(config.master_seed);
    state.population.reserve(config.population_size);
    for (std::size_t i = 0; i < config.population_size; ++i) {
        std::vector<std::uint8_t> code(config.genome_length);
        for (auto& byte : code) byte = state.streams.init.uniform_byte();
        state.population.emplace_back(std::move(code));
    }
    state.test_inputs = make_test_inputs(config.test_input_count, state.streams.test_inputs, config.test_input_max_len);
    return state;
}

void record_seed(std::span<const Genome> population, const ScoreVector& scores, std::vector<Genome>& seed_list)
{
    if (scores.size() != population.size()) throw std::invalid_argument("record_seed: scores not aligned");
    seed_list.push_back(population[fittest_index(scores)]);
}

FarmState step_generation(FarmState state, const FarmConfig& config)
{
    FitnessParams fitness = config.fitness;
    fitness.step_limit = config.step_limit;

    Dataset dataset = generate_dataset(config.dataset, state.streams.dataset);
    state.scores = score_population(state.population, dataset, fitness);
    record_seed(state.population, state.scores, state.seed_list);

    std::vector<std::uint8_t> trivial(state.population.size());
    for (std::size_t i = 0; i < state.population.size(); ++i) {
        trivial[i] = is_syntactically_trivial(state.population[i]) ? 1 : 0;
    }
    std::size_t generation = state.generation + 1;
    maybe_add_elite(state.elites, state.population, state.scores, trivial, state.test_inputs, generation,
                    config.step_limit);

    std::vector<Genome> elite_genomes;
    elite_genomes.reserve(state.elites.size());
    for (const auto& e : state.elites) elite_genomes.push_back(e.genome);

    auto& s = state.streams;
    state.population = next_generation(state.population, state.scores.weak, elite_genomes, config.evolution,
                                       EvolutionStreams{s.selection, s.elite_coin, s.mutation, s.crossover});
    state.generation = generation;
    return state;
}

std::vector<Genome> export_seeds(std::span<const Genome> seed_list, const TestInputs& test_inputs,
                                 std::size_t step_limit, std::size_t n, bool dedup)
{
    if (n < 1) throw std::invalid_argument("export_seeds: n must be at least 1");
    std::vector<Genome> picked;
    if (!dedup) {
        std::size_t take = std::min(n, seed_list.size());
        picked.assign(seed_list.end() - static_cast<std::ptrdiff_t>(take), seed_list.end());
        return picked;
    }
    std::vector<Signature> kept;
    for (auto it = seed_list.rbegin(); it != seed_list.rend() && picked.size() < n; ++it) {
        Signature sig = compute_signature(*it, test_inputs, step_limit);
        if (std::find(kept.begin(), kept.end(), sig) != kept.end()) continue;
        kept.push_back(std::move(sig));
        picked.push_back(*it);
    }
    std::reverse(picked.begin(), picked.end());
    return picked;
}

double progress_metric(std::span<const EliteEntry> elites, std::size_t window, std::size_t current_generation)
{
    if (window < 1) throw std::invalid_argument("progress_metric: window must be at least 1");
    std::size_t start = current_generation > window ? current_generation - window : 0;
    auto added = std::count_if(elites.begin(), elites.end(), [&](const EliteEntry& e) {
        return e.generation_added > start && e.generation_added <= current_generation;
    });
    return static_cast<double>(added) / static_cast<double>(window);
}

bool should_stop(const FarmState& state, const FarmConfig& config)
{
    if (state.generation >= config.termination.max_generations) return true;
    return config.termination.elite_target > 0 && state.elites.size() >= config.termination.elite_target;
}

FarmState run(const FarmConfig& config, const RunOptions& options)
{
    config.validate();
    FarmState state = options.snapshot_in ? load_snapshot(*options.snapshot_in, config) : init_farm(config);
    while (!should_stop(state, config)) {
        state = step_generation(std::move(state), config);
        if (options.progress_log) {
            double best = *std::max_element(state.scores.weak.begin(), state.scores.weak.end());
            *options.progress_log << "gen=" << state.generation << " best=" << best
                                  << " elites=" << state.elites.size() << " seeds=" << state.seed_list.size()
                                  << '\n';
        }
    }
    if (options.snapshot_out) save_snapshot(state, config, *options.snapshot_out);
    return state;
}

} // namespace codefarm
