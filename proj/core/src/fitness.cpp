#include "codefarm/fitness.hpp"

#include <algorithm>
#include <stdexcept>

#include "codefarm/errors.hpp"
#include "codefarm/parallel.hpp"

namespace codefarm {

void FitnessParams::validate() const
{
    if (!(selection_strength > 0.0 && selection_strength <= 1.0)) {
        throw ConfigError("fitness.selection_strength", "must lie in (0, 1]");
    }
    if (step_limit < 1) throw ConfigError("step_limit", "must be at least 1");
}

double raw_match(const BitString& output, const BitString& target) noexcept
{
    if (target.empty()) return 1.0;
    std::size_t overlap = std::min(output.size(), target.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < overlap; ++i) {
        if (output[i] == target[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(target.size());
}

ScoreVector scale_scores(std::vector<double> raw, double selection_strength)
{
    ScoreVector scores;
    scores.differential.assign(raw.size(), 0.0);
    if (!raw.empty()) {
        auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
        double min = *lo;
        double max = *hi;
        if (min != max) {
            // (r - min) / (max - min) is exactly 0 at min and 1 at max.
            for (std::size_t i = 0; i < raw.size(); ++i) {
                scores.differential[i] = 2.0 * ((raw[i] - min) / (max - min)) - 1.0;
            }
        }
    }
    scores.weak.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        scores.weak[i] = 1.0 + selection_strength * scores.differential[i];
    }
    scores.raw = std::move(raw);
    return scores;
}

ScoreVector score_population(std::span<const Genome> population, const Dataset& dataset,
                             const FitnessParams& params)
{
    if (population.empty()) throw std::invalid_argument("score_population: empty population");
    if (dataset.empty()) throw std::invalid_argument("score_population: empty dataset");
    params.validate();

    std::vector<double> raw(population.size(), 0.0);
    parallel_for(population.size(), [&](std::size_t i) {
        const Genome& genome = population[i];
        if (is_syntactically_trivial(genome)) {
            raw[i] = 0.0;
            return;
        }
        double total = 0.0;
        for (const auto& datum : dataset) {
            auto outcome = execute(genome, datum.input, params.step_limit);
            total += datum_score(raw_match(outcome.output, datum.output), params.correlation_mode);
        }
        raw[i] = total / static_cast<double>(dataset.size());
    });
    return scale_scores(std::move(raw), params.selection_strength);
}

std::size_t fittest_index(const ScoreVector& scores)
{
    if (scores.weak.empty()) throw std::invalid_argument("fittest_index: no scores");
    return static_cast<std::size_t>(std::max_element(scores.weak.begin(), scores.weak.end()) - scores.weak.begin());
}

} // namespace codefarm
