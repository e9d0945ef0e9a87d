#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "codefarm/errors.hpp"
#include "codefarm/farm.hpp"

namespace codefarm {

void FarmConfig::validate() const
{
    if (population_size < 2 || population_size % 2 != 0) {
        throw ConfigError("population_size", "must be even and at least 2");
    }
    if (genome_length < 1) throw ConfigError("genome_length", "must be at least 1");
    if (evolution.crossover_method == CrossoverMethod::Single && genome_length < 2) {
        throw ConfigError("genome_length", "single-point crossover needs at least 2 loci");
    }
    if (step_limit < 1) throw ConfigError("step_limit", "must be at least 1");
    if (test_input_count < 1) throw ConfigError("test_input_count", "must be at least 1");
    if (test_input_max_len < 1) throw ConfigError("test_input_max_len", "must be at least 1");
    dataset.validate();
    fitness.validate();
    evolution.validate();
}

namespace {

std::string_view trim(std::string_view s)
{
    auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r'; };
    while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
    return s;
}

std::uint64_t parse_unsigned(const std::string& key, std::string_view text)
{
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw ConfigError(key, "expected a non-negative integer, got '" + std::string(text) + "'");
    }
    return value;
}

// Accepts a decimal number or a fraction such as 1/2048.
double parse_real(const std::string& key, std::string_view text)
{
    auto parse_one = [&](std::string_view part) {
        double value = 0.0;
        auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc{} || end != part.data() + part.size()) {
            throw ConfigError(key, "expected a number, got '" + std::string(text) + "'");
        }
        return value;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_one(text);
    double den = parse_one(trim(text.substr(slash + 1)));
    if (den == 0.0) throw ConfigError(key, "division by zero");
    return parse_one(trim(text.substr(0, slash))) / den;
}

bool parse_bool(const std::string& key, std::string_view text)
{
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw ConfigError(key, "expected true or false, got '" + std::string(text) + "'");
}

std::string format_real(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using Setter = std::function<void(FarmConfig&, const std::string&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters()
{
    static const std::map<std::string, Setter, std::less<>> table = {
        {"population_size", [](FarmConfig& c, const std::string& k, std::string_view v) { c.population_size = parse_unsigned(k, v); }},
        {"genome_length", [](FarmConfig& c, const std::string& k, std::string_view v) { c.genome_length = parse_unsigned(k, v); }},
        {"step_limit", [](FarmConfig& c, const std::string& k, std::string_view v) { c.step_limit = parse_unsigned(k, v); }},
        {"test_input_count", [](FarmConfig& c, const std::string& k, std::string_view v) { c.test_input_count = parse_unsigned(k, v); }},
        {"test_input_max_len", [](FarmConfig& c, const std::string& k, std::string_view v) { c.test_input_max_len = parse_unsigned(k, v); }},
        {"master_seed", [](FarmConfig& c, const std::string& k, std::string_view v) { c.master_seed = parse_unsigned(k, v); }},
        {"dataset.mode",
         [](FarmConfig& c, const std::string& k, std::string_view v) {
             if (v == "fixed") c.dataset.mode = DatasetMode::Fixed;
             else if (v == "universal") c.dataset.mode = DatasetMode::Universal;
             else throw ConfigError(k, "expected fixed or universal, got '" + std::string(v) + "'");
         }},
        {"dataset.num_examples", [](FarmConfig& c, const std::string& k, std::string_view v) { c.dataset.num_examples = parse_unsigned(k, v); }},
        {"dataset.fixed_input_len", [](FarmConfig& c, const std::string& k, std::string_view v) { c.dataset.fixed_input_len = parse_unsigned(k, v); }},
        {"dataset.fixed_output_len", [](FarmConfig& c, const std::string& k, std::string_view v) { c.dataset.fixed_output_len = parse_unsigned(k, v); }},
        {"dataset.universal_max_len", [](FarmConfig& c, const std::string& k, std::string_view v) { c.dataset.universal_max_len = parse_unsigned(k, v); }},
        {"fitness.selection_strength", [](FarmConfig& c, const std::string& k, std::string_view v) { c.fitness.selection_strength = parse_real(k, v); }},
        {"fitness.correlation_mode", [](FarmConfig& c, const std::string& k, std::string_view v) { c.fitness.correlation_mode = parse_bool(k, v); }},
        {"evolution.mutation_rate", [](FarmConfig& c, const std::string& k, std::string_view v) { c.evolution.mutation_rate = parse_real(k, v); }},
        {"evolution.crossover_rate", [](FarmConfig& c, const std::string& k, std::string_view v) { c.evolution.crossover_rate = parse_real(k, v); }},
        {"evolution.crossover_method",
         [](FarmConfig& c, const std::string& k, std::string_view v) {
             if (v == "single") c.evolution.crossover_method = CrossoverMethod::Single;
             else if (v == "uniform") c.evolution.crossover_method = CrossoverMethod::Uniform;
             else throw ConfigError(k, "expected single or uniform, got '" + std::string(v) + "'");
         }},
        {"evolution.elite_probability", [](FarmConfig& c, const std::string& k, std::string_view v) { c.evolution.elite_probability = parse_real(k, v); }},
        {"termination.max_generations", [](FarmConfig& c, const std::string& k, std::string_view v) { c.termination.max_generations = parse_unsigned(k, v); }},
        {"termination.elite_target", [](FarmConfig& c, const std::string& k, std::string_view v) { c.termination.elite_target = parse_unsigned(k, v); }},
    };
    return table;
}

std::string format_trajectory_fields(const FarmConfig& c)
{
    std::ostringstream out;
    out << "population_size = " << c.population_size << '\n'
        << "genome_length = " << c.genome_length << '\n'
        << "step_limit = " << c.step_limit << '\n'
        << "test_input_count = " << c.test_input_count << '\n'
        << "test_input_max_len = " << c.test_input_max_len << '\n'
        << "master_seed = " << c.master_seed << '\n'
        << "dataset.mode = " << (c.dataset.mode == DatasetMode::Fixed ? "fixed" : "universal") << '\n'
        << "dataset.num_examples = " << c.dataset.num_examples << '\n'
        << "dataset.fixed_input_len = " << c.dataset.fixed_input_len << '\n'
        << "dataset.fixed_output_len = " << c.dataset.fixed_output_len << '\n'
        << "dataset.universal_max_len = " << c.dataset.universal_max_len << '\n'
        << "fitness.selection_strength = " << format_real(c.fitness.selection_strength) << '\n'
        << "fitness.correlation_mode = " << (c.fitness.correlation_mode ? "true" : "false") << '\n'
        << "evolution.mutation_rate = " << format_real(c.evolution.mutation_rate) << '\n'
        << "evolution.crossover_rate = " << format_real(c.evolution.crossover_rate) << '\n'
        << "evolution.crossover_method = "
        << (c.evolution.crossover_method == CrossoverMethod::Single ? "single" : "uniform") << '\n'
        << "evolution.elite_probability = " << format_real(c.evolution.elite_probability) << '\n';
    return out.str();
}

} // namespace

FarmConfig parse_farm_config(std::string_view text)
{
    FarmConfig config;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError(key, "unknown key (line " + std::to_string(line_no) + ")");
        if (!seen.insert(key).second) throw ConfigError(key, "given more than once");
        it->second(config, key, value);
    }
    config.fitness.step_limit = config.step_limit;
    config.validate();
    return config;
}

FarmConfig load_farm_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_farm_config(buffer.str());
}

std::string format_farm_config(const FarmConfig& config)
{
    return format_trajectory_fields(config)
           + "termination.max_generations = " + std::to_string(config.termination.max_generations) + '\n'
           + "termination.elite_target = " + std::to_string(config.termination.elite_target) + '\n';
}

std::string config_digest(const FarmConfig& config)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(format_trajectory_fields(config))));
    return buf;
}

} // namespace codefarm
