#include "codefarm/replicator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace codefarm::replicator {

Frequencies step(std::span<const double> frequencies, std::span<const double> fitnesses)
{
    if (frequencies.size() != fitnesses.size()) {
        throw std::invalid_argument("replicator step: frequencies and fitnesses differ in length");
    }
    Frequencies next(frequencies.size());
    double normalizer = 0.0;
    for (std::size_t j = 0; j < frequencies.size(); ++j) {
        if (!(fitnesses[j] > 0.0) || !std::isfinite(fitnesses[j])) {
            throw std::invalid_argument("replicator step: fitness must be finite and positive");
        }
        next[j] = fitnesses[j] * frequencies[j];
        normalizer += next[j];
    }
    if (!(normalizer > 0.0)) throw std::invalid_argument("replicator step: all frequencies are zero");
    for (double& x : next) x /= normalizer;
    // Second pass keeps the sum at 1 to within rounding over long traces.
    double total = std::accumulate(next.begin(), next.end(), 0.0);
    for (double& x : next) x /= total;
    return next;
}

std::vector<Frequencies> run_trace(const Frequencies& initial, const FitnessTrace& trace)
{
    std::vector<Frequencies> states;
    states.reserve(trace.size() + 1);
    states.push_back(initial);
    for (const auto& row : trace) states.push_back(step(states.back(), row));
    return states;
}

VarianceReport variance_comparison(std::span<const double> trace_a, std::span<const double> trace_b)
{
    if (trace_a.size() != trace_b.size()) throw std::invalid_argument("variance_comparison: traces differ in length");
    if (trace_a.empty()) throw std::invalid_argument("variance_comparison: empty traces");

    VarianceReport report;
    for (auto trace : {trace_a, trace_b}) {
        double sum = 0.0;
        double log_sum = 0.0;
        for (double f : trace) {
            if (!(f > 0.0) || !std::isfinite(f)) throw std::invalid_argument("variance_comparison: values must be positive");
            sum += f;
            log_sum += std::log(f);
        }
        double n = static_cast<double>(trace.size());
        double mean = sum / n;
        double squares = 0.0;
        for (double f : trace) squares += (f - mean) * (f - mean);
        report.arithmetic_mean.push_back(mean);
        report.geometric_mean.push_back(std::exp(log_sum / n));
        report.variance.push_back(squares / n);
    }
    if (report.geometric_mean[0] > report.geometric_mean[1]) report.winner = 0;
    else if (report.geometric_mean[1] > report.geometric_mean[0]) report.winner = 1;
    return report;
}

TraceParseError::TraceParseError(std::size_t row, std::size_t column, const std::string& message)
    : std::runtime_error("trace row " + std::to_string(row) + ", column " + std::to_string(column) + ": " + message),
      row_{row}, column_{column}
{
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    for (;;) {
        auto comma = line.find(',');
        fields.push_back(trim(line.substr(0, comma)));
        if (comma == std::string_view::npos) return fields;
        line.remove_prefix(comma + 1);
    }
}

bool parses_as_number(std::string_view field)
{
    double value;
    auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    return ec == std::errc{} && end == field.data() + field.size();
}

} // namespace

FitnessTrace parse_trace_csv(std::string_view text)
{
    FitnessTrace trace;
    std::size_t columns = 0;
    std::size_t row = 0;
    bool first_content = true;
    while (!text.empty()) {
        ++row;
        auto eol = text.find('\n');
        std::string_view line = trim(text.substr(0, eol));
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        if (line.empty()) continue;

        auto fields = split_fields(line);
        if (first_content) {
            first_content = false;
            bool header = std::none_of(fields.begin(), fields.end(), parses_as_number);
            if (header) {
                columns = fields.size();
                continue;
            }
        }
        if (columns == 0) columns = fields.size();
        if (fields.size() != columns) {
            throw TraceParseError(row, std::min(fields.size(), columns) + 1,
                                  "expected " + std::to_string(columns) + " columns, found "
                                      + std::to_string(fields.size()));
        }
        std::vector<double> values;
        values.reserve(columns);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            double value = 0.0;
            auto field = fields[c];
            auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
            if (ec != std::errc{} || end != field.data() + field.size()) {
                throw TraceParseError(row, c + 1, "not a number: '" + std::string(field) + "'");
            }
            if (!(value > 0.0) || !std::isfinite(value)) {
                throw TraceParseError(row, c + 1, "fitness must be finite and positive");
            }
            values.push_back(value);
        }
        trace.push_back(std::move(values));
    }
    if (trace.empty()) throw TraceParseError(row == 0 ? 1 : row, 1, "no data rows");
    return trace;
}

} // namespace codefarm::replicator
