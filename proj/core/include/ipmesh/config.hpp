#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ipmesh/harness.hpp"

namespace ipmesh {

/// Keys accepted by apply_setting, in documentation order.
const std::vector<std::string>& config_keys();

/// Sets one SchemeConfig field from its textual value. Keys mirror the field
/// names; monitor and solver fields use their own names (k, smoothing_passes,
/// deboor_iterations, tol, max_iter, jacobian). Throws ConfigError.
void apply_setting(SchemeConfig& config, const std::string& key, const std::string& value);

/// Parses `key = value` lines; '#' starts a comment, blank lines are ignored.
/// Throws ConfigError on malformed lines.
std::vector<std::pair<std::string, std::string>> parse_key_values(const std::string& text);

/// Reads and parses a key-value file. Throws IoError if it cannot be read.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

/// Key-value text that reproduces `config` through apply_setting.
std::string format_config(const SchemeConfig& config);

}  // namespace ipmesh
