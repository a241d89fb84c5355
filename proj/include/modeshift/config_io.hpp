#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "modeshift/config.hpp"

namespace modeshift {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses a JSON config document. Missing keys fall back to defaults built for
// the document's agent_count; unknown keys are errors. Throws ConfigError.
ScenarioConfig parse_config(const std::string& json_text);

ScenarioConfig load_config_file(const std::string& path);

// Canonical serialization (sorted keys, two-space indent, trailing newline).
// serialize(parse(serialize(cfg))) == serialize(cfg), byte for byte.
std::string serialize_config(const ScenarioConfig& cfg);

// FNV-1a hash of the canonical serialization, as fixed-width hex.
std::string config_hash(const ScenarioConfig& cfg);

}  // namespace modeshift
