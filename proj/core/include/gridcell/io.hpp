#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>

#include "gridcell/analytic.hpp"

namespace gridcell {

// Flat "key = value" text with '#' comments. Unknown keys are an error.
struct ConfigFile {
    NetworkConfig net;
    double lambda_m_all; // total MT density (1/m^2); scenario-level scale
};

ConfigFile parse_config(std::istream& in);
ConfigFile load_config(const std::filesystem::path& path);

// Applies "key=value" overrides to an already-parsed config. Keys match the
// config-file keys; throws ValidationError on unknown keys or bad values.
void apply_override(ConfigFile& cfg, const std::string& key, const std::string& value);

// Shortest round-trip decimal formatting; identical inputs give identical
// bytes.
std::string format_double(double v);

// Writes content to a temporary file in the target directory and renames it
// into place, so failed runs leave no partial output.
void atomic_write(const std::filesystem::path& path, const std::string& content);

} // namespace gridcell
