#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "codefarm/datasets.hpp"
#include "codefarm/genome_vm.hpp"

namespace codefarm {

struct FitnessParams {
    double selection_strength = 0.125;  // epsilon, in (0, 1]
    bool correlation_mode = false;
    std::size_t step_limit = kDefaultStepLimit;

    void validate() const;

    friend bool operator==(const FitnessParams&, const FitnessParams&) = default;
};

/// Per-genome scores. weak[i] == 1 + epsilon * differential[i].
struct ScoreVector {
    std::vector<double> raw;
    std::vector<double> differential;  // in [-1, 1]
    std::vector<double> weak;          // in [1 - epsilon, 1 + epsilon]

    std::size_t size() const noexcept { return weak.size(); }
    bool empty() const noexcept { return weak.empty(); }

    friend bool operator==(const ScoreVector&, const ScoreVector&) = default;
};

/// Fraction of target positions reproduced by output. Missing output bits are
/// mismatches and surplus bits are ignored. An empty target is matched
/// vacuously (1.0).
double raw_match(const BitString& output, const BitString& target) noexcept;

/// With correlation on, a bitwise complement scores as well as an exact match.
constexpr double datum_score(double raw, bool correlation_mode) noexcept
{
    return correlation_mode && 1.0 - raw > raw ? 1.0 - raw : raw;
}

/// Affine min -> -1, max -> +1 rescale (all zeros when min == max), followed
/// by the weak-selection transform 1 + epsilon * d. Endpoints are exact.
ScoreVector scale_scores(std::vector<double> raw, double selection_strength);

/// Scores every genome against the dataset. Syntactically trivial genomes get
/// the lowest possible raw score, 0. Evaluation may run in parallel; the
/// result does not depend on the schedule.
/// Throws std::invalid_argument on an empty population or dataset.
ScoreVector score_population(std::span<const Genome> population, const Dataset& dataset,
                             const FitnessParams& params);

/// Index of the largest weak score, lowest index on ties.
std::size_t fittest_index(const ScoreVector& scores);

} // namespace codefarm
