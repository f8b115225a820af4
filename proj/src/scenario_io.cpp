#include "nanofall/scenario_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace nanofall {

namespace {

using nlohmann::json;

double num_at(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_number())
        throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

double num_or(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    return num_at(j, key);
}

Vec3 vec_or(const json& j, const std::string& key, Vec3 fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_array() || v.size() != 3)
        throw ConfigError("config key '" + key + "' must be an array of 3 numbers");
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
        if (!v[i].is_number()) throw ConfigError("config key '" + key + "' must be numeric");
        out[i] = v[i].get<double>();
    }
    return out;
}

const std::set<std::string> kTopKeys = {
    "radius", "density", "internal_temperature",
    "gas_temperature", "gas_pressure", "gas_molecule_mass_amu", "environment_temperature",
    "initial_spread", "initial_centre", "initial_velocity",
    "gravity", "amplification", "channels", "qmupl_lambda",
    "duration", "sample_times", "sample_points",
    "trajectories", "master_seed", "filter_gas_collisions",
    "rel_tol", "abs_tol", "max_step"};

const std::set<std::string> kChannelKeys = {"gamma", "alpha", "label"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

ScenarioConfig parse_config_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    for (const auto& item : j.items())
        if (!kTopKeys.count(item.key()))
            throw ConfigError("unknown config key '" + item.key() + "'");
    for (const char* req : {"radius", "density", "initial_spread", "duration"})
        if (!j.contains(req)) throw ConfigError(std::string("missing required config key '") + req + "'");

    ScenarioConfig c;
    try {
        c.sphere = NanosphereSpec(num_at(j, "radius"), num_at(j, "density"),
                                  num_or(j, "internal_temperature", 2000.0));
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("config key 'radius'/'density': ") + e.what());
    }
    c.environment.gas_temperature = num_or(j, "gas_temperature", 16.0);
    c.environment.gas_pressure = num_or(j, "gas_pressure", 1e-13);
    c.environment.gas_molecule_mass =
        num_or(j, "gas_molecule_mass_amu", 28.97) * constants().amu;
    c.environment.environment_temperature = num_or(j, "environment_temperature", 16.0);

    c.initial_spread = num_at(j, "initial_spread");
    c.initial_centre = vec_or(j, "initial_centre", {});
    c.initial_velocity = vec_or(j, "initial_velocity", {});

    if (j.contains("gravity")) {
        if (!j["gravity"].is_boolean()) throw ConfigError("config key 'gravity' must be a boolean");
        c.gravity = j["gravity"].get<bool>();
    }
    c.amplification = num_or(j, "amplification", 1.0);
    c.qmupl_lambda = num_or(j, "qmupl_lambda", 0.0);
    c.duration = num_at(j, "duration");

    if (j.contains("channels")) {
        const auto& arr = j["channels"];
        if (!arr.is_array()) throw ConfigError("config key 'channels' must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto& ch = arr[i];
            const std::string path = "channels[" + std::to_string(i) + "]";
            if (!ch.is_object()) throw ConfigError("config key '" + path + "' must be an object");
            for (const auto& item : ch.items())
                if (!kChannelKeys.count(item.key()))
                    throw ConfigError("unknown config key '" + path + "." + item.key() + "'");
            if (!ch.contains("gamma") || !ch.contains("alpha"))
                throw ConfigError("config key '" + path + "' needs 'gamma' and 'alpha'");
            std::string label = ch.contains("label") ? ch["label"].get<std::string>()
                                                     : ("channel" + std::to_string(i));
            try {
                c.channels.emplace_back(num_at(ch, "gamma"), num_at(ch, "alpha"), label);
            } catch (const std::domain_error& e) {
                throw ConfigError("config key '" + path + "': " + e.what());
            }
        }
    }

    if (j.contains("sample_times")) {
        for (const auto& v : j["sample_times"]) {
            if (!v.is_number()) throw ConfigError("config key 'sample_times' must be numeric");
            c.sample_times.push_back(v.get<double>());
        }
    } else {
        const int pts = static_cast<int>(num_or(j, "sample_points", 200));
        if (pts < 1) throw ConfigError("config key 'sample_points' must be >= 1");
        for (int i = 0; i <= pts; ++i)
            c.sample_times.push_back(c.duration * static_cast<double>(i) / pts);
    }

    c.trajectory_count = static_cast<int>(num_or(j, "trajectories", 10000));
    c.master_seed = static_cast<std::uint64_t>(num_or(j, "master_seed", 1));
    if (j.contains("filter_gas_collisions")) {
        if (!j["filter_gas_collisions"].is_boolean())
            throw ConfigError("config key 'filter_gas_collisions' must be a boolean");
        c.filter_gas_collisions = j["filter_gas_collisions"].get<bool>();
    }
    c.integrator.rel_tol = num_or(j, "rel_tol", 1e-10);
    c.integrator.abs_tol = num_or(j, "abs_tol", 0.0);
    c.integrator.max_step = num_or(j, "max_step", 0.0);

    try {
        c.validate();
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    return c;
}

ScenarioConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string serialize_config(const ScenarioConfig& c) {
    json j;
    j["radius"] = c.sphere.radius;
    j["density"] = c.sphere.density;
    j["internal_temperature"] = c.sphere.internal_temperature;
    j["gas_temperature"] = c.environment.gas_temperature;
    j["gas_pressure"] = c.environment.gas_pressure;
    j["gas_molecule_mass_amu"] = c.environment.gas_molecule_mass / constants().amu;
    j["environment_temperature"] = c.environment.environment_temperature;
    j["initial_spread"] = c.initial_spread;
    j["initial_centre"] = {c.initial_centre.x, c.initial_centre.y, c.initial_centre.z};
    j["initial_velocity"] = {c.initial_velocity.x, c.initial_velocity.y, c.initial_velocity.z};
    j["gravity"] = c.gravity;
    j["amplification"] = c.amplification;
    j["qmupl_lambda"] = c.qmupl_lambda;
    j["duration"] = c.duration;
    json channels = json::array();
    for (const auto& ch : c.channels)
        channels.push_back({{"gamma", ch.gamma}, {"alpha", ch.alpha}, {"label", ch.label}});
    j["channels"] = channels;
    j["sample_times"] = c.sample_times;
    j["trajectories"] = c.trajectory_count;
    j["master_seed"] = static_cast<double>(c.master_seed);
    j["filter_gas_collisions"] = c.filter_gas_collisions;
    j["rel_tol"] = c.integrator.rel_tol;
    j["abs_tol"] = c.integrator.abs_tol;
    j["max_step"] = c.integrator.max_step;
    return j.dump(2) + "\n";
}

std::string plotdata_csv(const EnsembleStats& stats) {
    std::string out = "t,total_spread,individual_rms,centre_rms,stderr,analytic_eq8\n";
    for (const auto& s : stats.samples) {
        out += fmt(s.time);
        out += ',';
        out += fmt(s.total_spread);
        out += ',';
        out += fmt(std::sqrt(s.mean_individual_variance));
        out += ',';
        out += fmt(std::sqrt(s.centre_variance));
        out += ',';
        out += fmt(s.standard_error);
        out += ',';
        out += fmt(s.analytic_eq8);
        out += '\n';
    }
    return out;
}

std::string plotdata_json(const EnsembleStats& stats) {
    json j;
    j["columns"] = {"t", "total_spread", "individual_rms", "centre_rms", "stderr", "analytic_eq8"};
    json rows = json::array();
    for (const auto& s : stats.samples)
        rows.push_back({s.time, s.total_spread, std::sqrt(s.mean_individual_variance),
                        std::sqrt(s.centre_variance), s.standard_error, s.analytic_eq8});
    j["rows"] = rows;
    j["trajectories_used"] = stats.trajectories_used;
    j["trajectories_dropped"] = stats.trajectories_dropped;
    return j.dump(2) + "\n";
}

void emit_plotdata(const EnsembleStats& stats, const std::string& path, const std::string& format) {
    std::string body;
    if (format == "csv") {
        body = plotdata_csv(stats);
    } else if (format == "json") {
        body = plotdata_json(stats);
    } else {
        throw ConfigError("unknown output format '" + format + "' (expected csv or json)");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << body;
    if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

} // namespace nanofall
