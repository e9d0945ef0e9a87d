#include "codefarm/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "codefarm/errors.hpp"

namespace codefarm {

using nlohmann::json;

namespace {

json genomes_to_json(std::span<const Genome> genomes)
{
    json list = json::array();
    for (const auto& g : genomes) list.push_back(g.to_hex());
    return list;
}

std::vector<Genome> genomes_from_json(const json& list)
{
    std::vector<Genome> genomes;
    genomes.reserve(list.size());
    for (const auto& item : list) genomes.push_back(Genome::from_hex(item.get<std::string>()));
    return genomes;
}

const json& require(const json& doc, const char* key)
{
    auto it = doc.find(key);
    if (it == doc.end()) throw SnapshotParseError(std::string("snapshot: missing key '") + key + "'");
    return *it;
}

} // namespace

std::string serialize_snapshot(const FarmState& state, const FarmConfig& config)
{
    json doc;
    doc["version"] = kSnapshotVersion;
    doc["config_digest"] = config_digest(config);
    doc["config"] = format_farm_config(config);
    doc["generation"] = state.generation;
    doc["population"] = genomes_to_json(state.population);
    doc["scores"] = {
        {"raw", state.scores.raw},
        {"differential", state.scores.differential},
        {"weak", state.scores.weak},
    };
    doc["seed_list"] = genomes_to_json(state.seed_list);

    json elites = json::array();
    for (const auto& e : state.elites) {
        json signature = json::array();
        for (const auto& entry : e.signature) signature.push_back(encode_signature_entry(entry));
        elites.push_back({{"genome", e.genome.to_hex()}, {"signature", std::move(signature)},
                          {"generation_added", e.generation_added}});
    }
    doc["elites"] = std::move(elites);

    json inputs = json::array();
    for (const auto& input : state.test_inputs) inputs.push_back(to_string(input));
    doc["test_inputs"] = std::move(inputs);

    json streams = json::object();
    for (auto name : FarmStreams::kNames) streams[std::string(name)] = state.streams.named(name).state();
    doc["rng_streams"] = std::move(streams);

    return doc.dump(1) + "\n";
}

LoadedSnapshot parse_snapshot(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw SnapshotParseError("snapshot: malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw SnapshotParseError("snapshot: top level is not an object");

    LoadedSnapshot out;
    try {
        const json& version = require(doc, "version");
        if (!version.is_number_integer() || version.get<int>() != kSnapshotVersion) {
            throw SnapshotVersionError("snapshot: unsupported format version " + version.dump());
        }
        out.digest = require(doc, "config_digest").get<std::string>();
        try {
            out.config = parse_farm_config(require(doc, "config").get<std::string>());
        } catch (const ConfigError& e) {
            throw SnapshotParseError(std::string("snapshot: embedded config invalid: ") + e.what());
        }
        if (config_digest(out.config) != out.digest) {
            throw SnapshotIncompatibleError("snapshot: config_digest " + out.digest
                                            + " does not match the embedded config");
        }

        FarmState& s = out.state;
        s.generation = require(doc, "generation").get<std::size_t>();
        s.population = genomes_from_json(require(doc, "population"));
        const json& scores = require(doc, "scores");
        s.scores.raw = require(scores, "raw").get<std::vector<double>>();
        s.scores.differential = require(scores, "differential").get<std::vector<double>>();
        s.scores.weak = require(scores, "weak").get<std::vector<double>>();
        s.seed_list = genomes_from_json(require(doc, "seed_list"));

        for (const auto& e : require(doc, "elites")) {
            EliteEntry entry{Genome::from_hex(require(e, "genome").get<std::string>()), {},
                             require(e, "generation_added").get<std::size_t>()};
            for (const auto& sig : require(e, "signature")) {
                entry.signature.push_back(decode_signature_entry(sig.get<std::string>()));
            }
            s.elites.push_back(std::move(entry));
        }
        for (const auto& input : require(doc, "test_inputs")) s.test_inputs.push_back(parse_bits(input.get<std::string>()));

        const json& streams = require(doc, "rng_streams");
        for (auto name : FarmStreams::kNames) {
            s.streams.named(name).set_state(require(streams, std::string(name).c_str()).get<std::uint64_t>());
        }
    } catch (const json::exception& e) {
        throw SnapshotParseError(std::string("snapshot: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw SnapshotParseError(std::string("snapshot: ") + e.what());
    }

    const FarmState& s = out.state;
    if (s.population.size() != out.config.population_size) {
        throw SnapshotParseError("snapshot: population size does not match its config");
    }
    for (const auto& g : s.population) {
        if (g.size() != out.config.genome_length) throw SnapshotParseError("snapshot: genome length mismatch");
    }
    if (s.seed_list.size() != s.generation) {
        throw SnapshotParseError("snapshot: seed list length differs from the generation count");
    }
    std::size_t expected_scores = s.generation == 0 ? 0 : s.population.size();
    if (s.scores.raw.size() != expected_scores || s.scores.differential.size() != expected_scores
        || s.scores.weak.size() != expected_scores) {
        throw SnapshotParseError("snapshot: score vectors do not match the population");
    }
    if (s.test_inputs.size() != out.config.test_input_count) {
        throw SnapshotParseError("snapshot: test input count does not match its config");
    }
    return out;
}

FarmState parse_snapshot(std::string_view text, const FarmConfig& config)
{
    LoadedSnapshot loaded = parse_snapshot(text);
    std::string expected = config_digest(config);
    if (loaded.digest != expected) {
        throw SnapshotIncompatibleError("snapshot: config_digest " + loaded.digest
                                        + " does not match the supplied config (" + expected + ")");
    }
    return std::move(loaded.state);
}

void save_snapshot(const FarmState& state, const FarmConfig& config, const std::filesystem::path& destination)
{
    std::string text = serialize_snapshot(state, config);
    std::filesystem::path tmp = destination;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw SnapshotIoError("snapshot: cannot write " + tmp.string());
        out << text;
        out.flush();
        if (!out) throw SnapshotIoError("snapshot: write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, destination, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw SnapshotIoError("snapshot: cannot replace " + destination.string());
    }
}

namespace {

std::string read_file(const std::filesystem::path& source)
{
    std::ifstream in(source, std::ios::binary);
    if (!in) throw SnapshotIoError("snapshot: cannot read " + source.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

FarmState load_snapshot(const std::filesystem::path& source, const FarmConfig& config)
{
    return parse_snapshot(read_file(source), config);
}

LoadedSnapshot load_snapshot(const std::filesystem::path& source)
{
    return parse_snapshot(read_file(source));
}

} // namespace codefarm
