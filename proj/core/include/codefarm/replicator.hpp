#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace codefarm::replicator {

/// Allele frequencies at one locus; nonnegative, summing to 1.
using Frequencies = std::vector<double>;

/// trace[t][j] is the mean fitness of allele j at generation t.
using FitnessTrace = std::vector<std::vector<double>>;

/// x'_j = F_j x_j / X with X = sum_j F_j x_j, renormalized.
/// Throws std::invalid_argument on size mismatch or non-positive fitness.
Frequencies step(std::span<const double> frequencies, std::span<const double> fitnesses);

/// All states, starting with `initial`; result size is trace.size() + 1.
std::vector<Frequencies> run_trace(const Frequencies& initial, const FitnessTrace& trace);

struct VarianceReport {
    std::vector<double> arithmetic_mean;
    std::vector<double> geometric_mean;
    std::vector<double> variance;
    std::optional<std::size_t> winner;  // empty on a tie
};

/// Time-averaged arithmetic and geometric means per trace. The predicted
/// winner is the trace with the strictly largest geometric mean.
VarianceReport variance_comparison(std::span<const double> trace_a, std::span<const double> trace_b);

/// Malformed trace CSV; row and column are 1-based.
class TraceParseError : public std::runtime_error {
public:
    TraceParseError(std::size_t row, std::size_t column, const std::string& message);
    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

/// One column per allele, one row per generation. A leading header row of
/// non-numeric labels is skipped. Values must be finite and positive.
FitnessTrace parse_trace_csv(std::string_view text);

} // namespace codefarm::replicator
