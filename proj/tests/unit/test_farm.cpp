#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <sstream>

#include "codefarm/errors.hpp"
#include "codefarm/farm.hpp"
#include "codefarm/snapshot.hpp"
#include "small_config.hpp"

using namespace codefarm;

TEST_CASE("config: defaults round-trip through the text format")
{
    FarmConfig c;
    CHECK(parse_farm_config(format_farm_config(c)) == c);
    FarmConfig s = small_farm_config(77);
    s.evolution.crossover_method = CrossoverMethod::Uniform;
    s.dataset.mode = DatasetMode::Universal;
    s.fitness.correlation_mode = true;
    CHECK(parse_farm_config(format_farm_config(s)) == s);
}

TEST_CASE("config: parsing")
{
    auto c = parse_farm_config(R"(
        # comment line
        population_size = 8   # trailing comment
        evolution.mutation_rate = 1/2048
        dataset.mode = universal
        fitness.correlation_mode = true
        step_limit = 99
    )");
    CHECK(c.population_size == 8);
    CHECK(c.evolution.mutation_rate == 1.0 / 2048);
    CHECK(c.dataset.mode == DatasetMode::Universal);
    CHECK(c.fitness.correlation_mode);
    CHECK(c.step_limit == 99);
    CHECK(c.fitness.step_limit == 99);
}

TEST_CASE("config: errors name the field")
{
    auto field_of = [](const char* text) {
        try {
            parse_farm_config(text);
        } catch (const ConfigError& e) {
            return e.field();
        }
        return std::string("<none>");
    };
    CHECK(field_of("bogus = 1") == "bogus");
    CHECK(field_of("population_size = 7") == "population_size");
    CHECK(field_of("population_size = -2") == "population_size");
    CHECK(field_of("evolution.crossover_rate = 0.75") == "evolution.crossover_rate");
    CHECK(field_of("evolution.elite_probability = 1") == "evolution.elite_probability");
    CHECK(field_of("fitness.selection_strength = 0") == "fitness.selection_strength");
    CHECK(field_of("dataset.mode = images") == "dataset.mode");
    CHECK(field_of("step_limit = 1\nstep_limit = 2") == "step_limit");
    CHECK(field_of("just some words") == "line 1");
    CHECK_THROWS_AS(load_farm_config("/nonexistent/farm.cfg"), ConfigError);
}

TEST_CASE("config digest ignores termination only")
{
    FarmConfig a = small_farm_config();
    FarmConfig b = a;
    b.termination.max_generations = 12345;
    b.termination.elite_target = 3;
    CHECK(config_digest(a) == config_digest(b));

    auto differs = [&](auto mutate) {
        FarmConfig c = a;
        mutate(c);
        return config_digest(c) != config_digest(a);
    };
    CHECK(differs([](FarmConfig& c) { c.population_size += 2; }));
    CHECK(differs([](FarmConfig& c) { c.genome_length += 1; }));
    CHECK(differs([](FarmConfig& c) { c.step_limit += 1; }));
    CHECK(differs([](FarmConfig& c) { c.master_seed += 1; }));
    CHECK(differs([](FarmConfig& c) { c.test_input_count += 1; }));
    CHECK(differs([](FarmConfig& c) { c.test_input_max_len += 1; }));
    CHECK(differs([](FarmConfig& c) { c.dataset.mode = DatasetMode::Universal; }));
    CHECK(differs([](FarmConfig& c) { c.dataset.num_examples += 1; }));
    CHECK(differs([](FarmConfig& c) { c.dataset.fixed_input_len += 1; }));
    CHECK(differs([](FarmConfig& c) { c.dataset.fixed_output_len += 1; }));
    CHECK(differs([](FarmConfig& c) { c.dataset.universal_max_len += 1; }));
    CHECK(differs([](FarmConfig& c) { c.fitness.selection_strength = 0.25; }));
    CHECK(differs([](FarmConfig& c) { c.fitness.correlation_mode = true; }));
    CHECK(differs([](FarmConfig& c) { c.evolution.mutation_rate = 0.01; }));
    CHECK(differs([](FarmConfig& c) { c.evolution.crossover_rate = 0.25; }));
    CHECK(differs([](FarmConfig& c) { c.evolution.crossover_method = CrossoverMethod::Uniform; }));
    CHECK(differs([](FarmConfig& c) { c.evolution.elite_probability = 0.5; }));
}

TEST_CASE("init_farm")
{
    FarmConfig c = small_farm_config();
    c.population_size = 4;
    auto s = init_farm(c);
    CHECK(s.population.size() == 4);
    for (const auto& g : s.population) CHECK(g.size() == c.genome_length);
    CHECK(s.generation == 0);
    CHECK(s.seed_list.empty());
    CHECK(s.elites.empty());
    CHECK(s.test_inputs.size() == c.test_input_count);
    CHECK(init_farm(c) == s);
    c.master_seed = 2;
    CHECK(init_farm(c) != s);

    FarmConfig bad = c;
    bad.population_size = 3;
    CHECK_THROWS_AS(init_farm(bad), ConfigError);
}

TEST_CASE("step_generation")
{
    FarmConfig c = small_farm_config();
    auto s0 = init_farm(c);
    auto s1 = step_generation(s0, c);
    CHECK(s1.generation == 1);
    CHECK(s1.seed_list.size() == 1);
    CHECK(s1.population.size() == c.population_size);
    CHECK(s1.scores.size() == c.population_size);
    CHECK(step_generation(s0, c) == s1);

    auto s = s1;
    for (int i = 0; i < 30; ++i) {
        auto prev = s;
        s = step_generation(std::move(s), c);
        CHECK(s.seed_list.size() == s.generation);
        CHECK(s.elites.size() <= s.generation);
        // Append-only ledgers.
        CHECK(std::equal(prev.seed_list.begin(), prev.seed_list.end(), s.seed_list.begin()));
        CHECK(std::equal(prev.elites.begin(), prev.elites.end(), s.elites.begin()));
        CHECK(s.elites.size() - prev.elites.size() <= 1);
    }
}

TEST_CASE("record_seed")
{
    std::vector<Genome> pop{Genome{1}, Genome{2}, Genome{3}};
    ScoreVector s;
    s.weak = {1.0, 1.125, 0.875};
    s.raw = s.differential = s.weak;
    std::vector<Genome> seeds;
    record_seed(pop, s, seeds);
    CHECK(seeds == std::vector<Genome>{Genome{2}});
    s.weak = {1.0, 1.0, 1.0};
    record_seed(pop, s, seeds);
    CHECK(seeds == std::vector<Genome>{Genome{2}, Genome{1}});
}

TEST_CASE("export_seeds")
{
    TestInputs inputs{parse_bits("1"), parse_bits("01"), parse_bits("")};
    Genome a{7}, b{6, 7}, c{2, 7};
    std::vector<Genome> seeds{a, b, c};
    CHECK(export_seeds(seeds, inputs, 64, 2, false) == std::vector<Genome>{b, c});
    CHECK(export_seeds(seeds, inputs, 64, 10, false) == seeds);
    CHECK(export_seeds({}, inputs, 64, 3, true).empty());
    CHECK_THROWS_AS(export_seeds(seeds, inputs, 64, 0, false), std::invalid_argument);

    // b and b2 compute the same function: the trailing move never shows.
    Genome b2{6, 7, 0};
    REQUIRE(compute_signature(b, inputs) == compute_signature(b2, inputs));
    std::vector<Genome> dup{a, b, c, b2};
    CHECK(export_seeds(dup, inputs, 64, 10, true) == std::vector<Genome>{a, c, b2});
    CHECK(export_seeds(dup, inputs, 64, 2, true) == std::vector<Genome>{c, b2});
    CHECK(export_seeds(dup, inputs, 64, 10, false) == dup);
}

TEST_CASE("progress_metric")
{
    std::vector<EliteEntry> ledger;
    CHECK(progress_metric(ledger, 10, 10) == 0.0);
    ledger.push_back({Genome{6, 7}, {}, 5});
    ledger.push_back({Genome{6, 7, 7}, {}, 9});
    CHECK(progress_metric(ledger, 10, 10) == doctest::Approx(0.2));
    CHECK(progress_metric(ledger, 3, 10) == doctest::Approx(1.0 / 3));
    std::vector<EliteEntry> every;
    for (std::size_t g = 1; g <= 10; ++g) every.push_back({Genome{6, 7}, {}, g});
    CHECK(progress_metric(every, 4, 10) == 1.0);
    CHECK_THROWS_AS(progress_metric(every, 0, 10), std::invalid_argument);
}

TEST_CASE("run: termination rules")
{
    FarmConfig c = small_farm_config();
    c.termination.max_generations = 0;
    CHECK(run(c) == init_farm(c));

    c.termination.max_generations = 500;
    c.termination.elite_target = 1;
    auto s = run(c);
    CHECK(s.elites.size() == 1);
    CHECK(s.elites[0].generation_added == s.generation);
    CHECK(s.generation < 500);

    c.termination.elite_target = 0;
    c.termination.max_generations = 7;
    std::ostringstream log;
    RunOptions opts;
    opts.progress_log = &log;
    auto r = run(c, opts);
    CHECK(r.generation == 7);
    auto text = log.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 7);
    CHECK(text.find("gen=7 best=") != std::string::npos);
    CHECK(text.find(" seeds=7\n") != std::string::npos);
}

TEST_CASE("run: 100 generations equals 50 + snapshot + 50")
{
    auto dir = std::filesystem::temp_directory_path() / "codefarm_test_farm";
    std::filesystem::create_directories(dir);
    auto path = dir / "half.json";

    FarmConfig c = small_farm_config(9);
    c.termination.max_generations = 100;
    auto straight = run(c);

    FarmConfig first = c;
    first.termination.max_generations = 50;
    RunOptions save;
    save.snapshot_out = path;
    run(first, save);

    RunOptions resume;
    resume.snapshot_in = path;
    auto resumed = run(c, resume);
    CHECK(resumed == straight);
    CHECK(serialize_snapshot(resumed, c) == serialize_snapshot(straight, c));

    FarmConfig other = c;
    other.master_seed = 10;
    CHECK_THROWS_AS(run(other, resume), SnapshotIncompatibleError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("run is independent of the worker count")
{
    FarmConfig c = small_farm_config(3);
    c.termination.max_generations = 15;
    setenv("CODEFARM_THREADS", "1", 1);
    auto one = run(c);
    setenv("CODEFARM_THREADS", "3", 1);
    auto three = run(c);
    unsetenv("CODEFARM_THREADS");
    CHECK(one == three);
}
