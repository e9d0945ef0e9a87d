#include <benchmark/benchmark.h>

#include "codefarm/datasets.hpp"
#include "codefarm/demo.hpp"
#include "codefarm/evolution.hpp"
#include "codefarm/fitness.hpp"
#include "codefarm/genome_vm.hpp"
#include "codefarm/random.hpp"

using namespace codefarm;

namespace {

std::vector<Genome> random_population(std::size_t size, std::size_t length, RandomStream& rng)
{
    std::vector<Genome> population;
    for (std::size_t i = 0; i < size; ++i) {
        std::vector<std::uint8_t> code(length);
        for (auto& b : code) b = rng.uniform_byte();
        population.emplace_back(std::move(code));
    }
    return population;
}

void BM_Execute(benchmark::State& state)
{
    RandomStream rng(1);
    auto population = random_population(64, static_cast<std::size_t>(state.range(0)), rng);
    BitString input(32, 1);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(execute(population[i++ % population.size()], input));
    }
}
BENCHMARK(BM_Execute)->Arg(64)->Arg(256);

void BM_ScorePopulation(benchmark::State& state)
{
    RandomStream rng(2);
    auto population = random_population(static_cast<std::size_t>(state.range(0)), kDefaultGenomeLength, rng);
    auto dataset = generate_dataset(DatasetConfig{}, rng);
    FitnessParams params;
    for (auto _ : state) {
        benchmark::DoNotOptimize(score_population(population, dataset, params));
    }
}
BENCHMARK(BM_ScorePopulation)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_NextGeneration(benchmark::State& state)
{
    RandomStream rng(3);
    auto population = random_population(256, kDefaultGenomeLength, rng);
    std::vector<double> weights(population.size(), 1.0);
    std::vector<Genome> elites(population.begin(), population.begin() + 8);
    EvolutionParams params;
    for (auto _ : state) {
        benchmark::DoNotOptimize(next_generation(population, weights, elites, params, rng));
    }
}
BENCHMARK(BM_NextGeneration)->Unit(benchmark::kMicrosecond);

void BM_DemoGeneration(benchmark::State& state)
{
    demo::Config config;
    RandomStream rng(4);
    auto population = demo::initialize_population(config, rng);
    demo::Dataset dataset;
    for (auto _ : state) {
        demo::generate_dataset(config, dataset, rng);
        auto scores = demo::fitness(population, dataset, config.selection_strength);
        population = demo::genetic_operators(config, scores, population, rng);
    }
}
BENCHMARK(BM_DemoGeneration)->Unit(benchmark::kMicrosecond);

} // namespace
BENCHMARK_MAIN();
