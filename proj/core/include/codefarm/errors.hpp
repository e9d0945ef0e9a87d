#pragma once

#include <stdexcept>
#include <string>

namespace codefarm {

/// Invalid farm configuration. field() names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_{std::move(field)}
    {
    }
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Base for everything that can go wrong reading or writing a snapshot.
class SnapshotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SnapshotParseError : public SnapshotError {
public:
    using SnapshotError::SnapshotError;
};

class SnapshotVersionError : public SnapshotError {
public:
    using SnapshotError::SnapshotError;
};

/// Snapshot was produced under a different configuration.
class SnapshotIncompatibleError : public SnapshotError {
public:
    using SnapshotError::SnapshotError;
};

class SnapshotIoError : public SnapshotError {
public:
    using SnapshotError::SnapshotError;
};

} // namespace codefarm
