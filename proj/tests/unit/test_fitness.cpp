#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cstdlib>

#include "codefarm/fitness.hpp"

using namespace codefarm;

TEST_CASE("raw_match")
{
    CHECK(raw_match(parse_bits("1010"), parse_bits("1010")) == 1.0);
    CHECK(raw_match(parse_bits("0101"), parse_bits("1010")) == 0.0);
    CHECK(raw_match(parse_bits("10"), parse_bits("1010")) == 0.5);
    CHECK(raw_match(parse_bits("101011"), parse_bits("1010")) == 1.0);
    CHECK(raw_match(parse_bits(""), parse_bits("1")) == 0.0);
    CHECK(raw_match(parse_bits("1"), parse_bits("")) == 1.0);
}

TEST_CASE("datum_score")
{
    CHECK(datum_score(0.0, true) == 1.0);
    CHECK(datum_score(0.3, false) == 0.3);
    CHECK(datum_score(0.5, true) == 0.5);
    CHECK(datum_score(0.25, true) == 0.75);
    CHECK(datum_score(0.9, true) == 0.9);
}

TEST_CASE("scale_scores: affine min/max rescale")
{
    auto s = scale_scores({3.0 / 8, 5.0 / 8, 7.0 / 8}, 0.125);
    CHECK(s.differential == std::vector<double>{-1.0, 0.0, 1.0});
    CHECK(s.weak == std::vector<double>{0.875, 1.0, 1.125});
}

TEST_CASE("scale_scores: degenerate cases")
{
    auto equal = scale_scores({0.4, 0.4, 0.4}, 0.125);
    CHECK(equal.differential == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(equal.weak == std::vector<double>{1.0, 1.0, 1.0});
    auto single = scale_scores({0.7}, 0.5);
    CHECK(single.differential == std::vector<double>{0.0});
    CHECK(single.weak == std::vector<double>{1.0});
}

TEST_CASE("score_population: identity programs beat silent ones")
{
    // Echo of the first 4 bits vs. programs that never read.
    Genome echo{6, 7, 6, 7, 6, 7, 6, 7};
    Genome silent{0, 0, 0};
    Genome zero_writer{7, 7, 7, 7};
    Dataset ds{{parse_bits("1011"), parse_bits("1011")}, {parse_bits("0110"), parse_bits("0110")}};
    std::vector<Genome> pop{silent, echo, zero_writer};
    auto s = score_population(pop, ds, FitnessParams{0.125, false, 256});
    CHECK(s.raw == std::vector<double>{0.0, 1.0, 0.0});
    CHECK(s.weak == std::vector<double>{0.875, 1.125, 0.875});
}

TEST_CASE("score_population: correlation mode credits complements")
{
    // read, inc, write: outputs the complement of each input bit's parity.
    Genome complement{6, 2, 7, 6, 2, 7};
    Genome echo{6, 7, 6, 7};
    Dataset ds{{parse_bits("10"), parse_bits("10")}};
    std::vector<Genome> pop{complement, echo};
    auto plain = score_population(pop, ds, FitnessParams{0.125, false, 256});
    CHECK(plain.raw == std::vector<double>{0.0, 1.0});
    auto corr = score_population(pop, ds, FitnessParams{0.125, true, 256});
    CHECK(corr.raw == std::vector<double>{1.0, 1.0});
    CHECK(corr.weak == std::vector<double>{1.0, 1.0});
}

TEST_CASE("score_population: errors")
{
    Dataset ds{{parse_bits("1"), parse_bits("1")}};
    std::vector<Genome> none;
    CHECK_THROWS_AS(score_population(none, ds, {}), std::invalid_argument);
    std::vector<Genome> pop{Genome{6, 7}};
    CHECK_THROWS_AS(score_population(pop, Dataset{}, {}), std::invalid_argument);
}

TEST_CASE("score_population does not depend on the thread count")
{
    RandomStream rng{17};
    std::vector<Genome> pop;
    for (int i = 0; i < 64; ++i) {
        std::vector<std::uint8_t> code(64);
        for (auto& b : code) b = rng.uniform_byte();
        pop.emplace_back(code);
    }
    DatasetConfig dc{DatasetMode::Fixed, 8, 16, 8, 64};
    auto ds = generate_dataset(dc, rng);
    FitnessParams params{0.125, false, 512};

    setenv("CODEFARM_THREADS", "1", 1);
    auto serial = score_population(pop, ds, params);
    setenv("CODEFARM_THREADS", "4", 1);
    auto threaded = score_population(pop, ds, params);
    unsetenv("CODEFARM_THREADS");
    CHECK(serial == threaded);
}

TEST_CASE("property: weak bounds, exact endpoints, monotonicity")
{
    RandomStream rng{31};
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n = 1 + rng.uniform_below(40);
        double eps = 0.01 + 0.99 * rng.uniform01();
        std::vector<double> raw(n);
        for (auto& r : raw) r = static_cast<double>(rng.uniform_below(9)) / 8.0;
        auto s = scale_scores(raw, eps);
        auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
        for (std::size_t i = 0; i < n; ++i) {
            REQUIRE(s.weak[i] >= 1.0 - eps);
            REQUIRE(s.weak[i] <= 1.0 + eps);
            REQUIRE(s.weak[i] == 1.0 + eps * s.differential[i]);
            for (std::size_t j = 0; j < n; ++j) {
                if (raw[i] > raw[j]) {
                    REQUIRE(s.differential[i] > s.differential[j]);
                    REQUIRE(s.weak[i] > s.weak[j]);
                }
            }
        }
        if (*lo != *hi) {
            REQUIRE(*std::min_element(s.differential.begin(), s.differential.end()) == -1.0);
            REQUIRE(*std::max_element(s.differential.begin(), s.differential.end()) == 1.0);
        }
    }
}

TEST_CASE("property: trivial genomes never strictly lead")
{
    RandomStream rng{44};
    DatasetConfig dc{DatasetMode::Fixed, 4, 8, 4, 64};
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Genome> pop;
        for (int i = 0; i < 12; ++i) {
            std::vector<std::uint8_t> code(16);
            for (auto& b : code) b = rng.uniform_byte();
            pop.emplace_back(code);
        }
        auto ds = generate_dataset(dc, rng);
        auto s = score_population(pop, ds, FitnessParams{0.125, trial % 2 == 0, 256});
        bool all_trivial = std::all_of(pop.begin(), pop.end(), [](const Genome& g) { return is_syntactically_trivial(g); });
        for (std::size_t i = 0; i < pop.size(); ++i) {
            if (!is_syntactically_trivial(pop[i]) || all_trivial) continue;
            bool strictly_largest = true;
            for (std::size_t j = 0; j < pop.size(); ++j) {
                if (j != i && s.weak[j] >= s.weak[i]) strictly_largest = false;
            }
            REQUIRE_FALSE(strictly_largest);
        }
    }
}

TEST_CASE("fittest_index breaks ties toward the lowest index")
{
    ScoreVector s;
    s.weak = {1.0, 1.125, 0.875};
    CHECK(fittest_index(s) == 1);
    s.weak = {1.0, 1.0, 1.0};
    CHECK(fittest_index(s) == 0);
}
