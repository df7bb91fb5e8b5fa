#pragma once

#include "holosim/scenarios.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace holosim {

/// Parses the sectioned text configuration. Required sections: [grid],
/// [geometry], [source], [object], [detection], [variant]; [noise] is
/// optional and a leading `name = ...` line names the scenario. Every
/// length carries an explicit unit suffix (nm, um, mm, cm, m) and is stored
/// in meters. Errors name the offending key.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig parse_config_file(const std::filesystem::path& path);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

/// Applies one flat `key=value` override (e.g. geometry.z_i=25cm,
/// grid.n_points=4096, theta=3.14159). Unknown keys are rejected with the
/// full list of valid keys.
void apply_override(ScenarioConfig& config, const std::string& key,
                    const std::string& value);

std::vector<std::string> valid_override_keys();

/// Length with mandatory unit suffix -> meters.
Real parse_length(const std::string& value, const std::string& key);

} // namespace holosim
