#pragma once

#include <string>
#include <vector>

#include "nanofall/ensemble.hpp"

namespace nanofall {

/// A scenario preset bound to one published parameter set. `variants` holds
/// the initial spreads to sweep (one entry for single-curve presets);
/// `eval_times` are the times at which curve gaps are quoted.
struct Preset {
    std::string name;
    std::string description;
    ScenarioConfig config;                 // base configuration
    std::vector<double> initial_spreads;   // variants (>= 1 entry)
    double window_start = 0.0;             // display window from the caption
    double window_end = 0.0;
    std::vector<double> eval_times;
};

const std::vector<Preset>& presets();
const Preset& preset_by_name(const std::string& name); // throws ConfigError-ish domain_error

/// Curve family of a figure run.
enum class Family { free_evolution, gravity_only, decoherence_only, decoherence_gravity };

std::string family_tag(Family f);

/// Applies a family to a base config (toggles gravity, clears channels).
ScenarioConfig family_config(const ScenarioConfig& base, Family f);

/// Families a preset emits: free/gravity pairs always, decoherence families
/// only when the preset has jump channels.
std::vector<Family> preset_families(const Preset& preset);

/// 200 evenly spaced sample points plus the window endpoints and eval times.
std::vector<double> make_sample_times(double duration, double window_start, double window_end,
                                      const std::vector<double>& eval_times);

} // namespace nanofall
