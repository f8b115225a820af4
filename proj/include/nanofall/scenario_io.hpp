#pragma once

#include <stdexcept>
#include <string>

#include "nanofall/ensemble.hpp"

namespace nanofall {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Reads a scenario from a JSON document. Required keys: radius, density,
/// initial_spread, duration. Unknown keys are rejected with their path;
/// missing optional keys take documented defaults. See README for the schema.
ScenarioConfig parse_config_text(const std::string& json_text);
ScenarioConfig parse_config(const std::string& path);

/// Canonical JSON form (round-trips through parse_config_text unchanged).
std::string serialize_config(const ScenarioConfig& config);

/// Writes ensemble statistics. CSV columns:
///   t,total_spread,individual_rms,centre_rms,stderr,analytic_eq8
/// with 17-significant-digit floats and LF line endings; JSON mirrors the
/// same columns. Bit-stable for identical stats.
void emit_plotdata(const EnsembleStats& stats, const std::string& path, const std::string& format);

std::string plotdata_csv(const EnsembleStats& stats);
std::string plotdata_json(const EnsembleStats& stats);

} // namespace nanofall
