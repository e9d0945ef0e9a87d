#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "codefarm/farm.hpp"

namespace codefarm {

inline constexpr int kSnapshotVersion = 1;

/// A snapshot read without an externally supplied configuration.
struct LoadedSnapshot {
    FarmConfig config;  // configuration embedded at save time
    FarmState state;
    std::string digest;
};

/// JSON document with keys version, config_digest, config, generation,
/// population, scores, seed_list, elites, test_inputs, rng_streams.
std::string serialize_snapshot(const FarmState& state, const FarmConfig& config);

/// Parses a document and checks its digest against its embedded config.
/// Throws SnapshotParseError, SnapshotVersionError or SnapshotIncompatibleError.
LoadedSnapshot parse_snapshot(std::string_view text);

/// As above, and also requires the document to match `config`.
FarmState parse_snapshot(std::string_view text, const FarmConfig& config);

/// Writes to a temporary sibling file and renames it over the destination.
/// Throws SnapshotIoError naming the path.
void save_snapshot(const FarmState& state, const FarmConfig& config, const std::filesystem::path& destination);

FarmState load_snapshot(const std::filesystem::path& source, const FarmConfig& config);
LoadedSnapshot load_snapshot(const std::filesystem::path& source);

} // namespace codefarm
