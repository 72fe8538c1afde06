#pragma once

#include <filesystem>
#include <string_view>

#include "trustsim/scenario.hpp"

namespace trustsim::config {

/// Parses a JSON scenario document. Structural problems (missing fields,
/// wrong types, unknown keys) throw ConfigError naming the field; semantic
/// range checks are left to ScenarioConfig::violations().
ScenarioConfig parse(std::string_view json_text);

/// parse() over a file. Throws IoError when the file cannot be read.
ScenarioConfig load_file(const std::filesystem::path& path);

/// The scenario back out as a JSON document (2-space indent, sorted as
/// written). load_file/parse of the output reproduces the config.
std::string to_json(const ScenarioConfig& config);

}  // namespace trustsim::config
