#include "nanofall/presets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nanofall/self_gravity.hpp"

namespace nanofall {

namespace {

std::vector<double> grid_times(double duration, int points) {
    std::vector<double> t;
    t.reserve(points + 1);
    for (int i = 0; i <= points; ++i)
        t.push_back(duration * static_cast<double>(i) / points);
    return t;
}

ScenarioConfig base_config(double radius, double density, double spread, double duration,
                           std::vector<JumpChannel> channels) {
    ScenarioConfig c;
    c.sphere = NanosphereSpec(radius, density);
    c.initial_spread = spread;
    c.gravity = true;
    c.channels = std::move(channels);
    c.duration = duration;
    c.trajectory_count = 10000;
    c.master_seed = 1;
    return c;
}

Preset make_preset(std::string name, std::string description, ScenarioConfig config,
                   std::vector<double> spreads, double wstart, double wend,
                   std::vector<double> evals) {
    Preset p;
    p.name = std::move(name);
    p.description = std::move(description);
    p.config = std::move(config);
    p.initial_spreads = std::move(spreads);
    p.window_start = wstart;
    p.window_end = wend;
    p.eval_times = evals;
    p.config.sample_times = make_sample_times(p.config.duration, wstart, wend, evals);
    return p;
}

std::vector<Preset> build_presets() {
    std::vector<Preset> out;

    // Free vs self-gravitating diffusion over 24 h; the initial spreads
    // bracket the stationary bound state (about 2.7e-7 m here).
    {
        ScenarioConfig c = base_config(1e-7, 2650.0, 1e-9, 86400.0, {});
        const double bs = bound_state(SpringModel(c.sphere)).spread;
        out.push_back(make_preset(
            "fig1", "silicate sphere, free vs self-gravitating spread over 24 h", c,
            {1e-9, 0.5 * bs, bs, 2.0 * bs}, 0.0, 86400.0, {86400.0}));
    }
    out.push_back(make_preset(
        "fig2_gold_strong", "gold sphere, strong collapse (alpha 1e18), 300 s drop",
        base_config(1e-7, 20000.0, 1e-9, 300.0, {JumpChannel(1.0, 1e18, "exotic")}),
        {1e-9}, 270.0, 300.0, {300.0}));
    out.push_back(make_preset(
        "fig3_silicate_dp", "silicate sphere, weak collapse (alpha 1e13), wide packet",
        base_config(1e-7, 2600.0, 1e-7, 300.0, {JumpChannel(1.0, 1e13, "exotic")}),
        {1e-7}, 270.0, 300.0, {200.0, 300.0}));
    out.push_back(make_preset(
        "fig4_gold_dp", "gold sphere, weak collapse (alpha 1e13), 1000 s drop",
        base_config(1e-7, 20000.0, 1e-9, 1000.0, {JumpChannel(1.0, 1e13, "exotic")}),
        {1e-9}, 900.0, 1000.0, {1000.0}));
    out.push_back(make_preset(
        "fig5_gold_strong_long", "gold sphere, strong collapse (alpha 1e16), 1000 s drop",
        base_config(1e-7, 20000.0, 1e-9, 1000.0, {JumpChannel(1.0, 1e16, "exotic")}),
        {1e-9}, 900.0, 1000.0, {1000.0}));
    out.push_back(make_preset(
        "fig6_gold_weak_wide", "gold sphere, weak collapse (alpha 1e11), wide packet",
        base_config(1e-7, 20000.0, 1e-7, 1000.0, {JumpChannel(1.0, 1e11, "exotic")}),
        {1e-7}, 0.0, 1000.0, {200.0, 1000.0}));
    {
        ScenarioConfig c = base_config(1e-7, 20000.0, 1e-11, 1.0,
                                       {JumpChannel(1e3, 1e16, "photon")});
        c.gravity = false; // photon tailoring acts before the gravity-sensitive drop
        out.push_back(make_preset(
            "tailoring", "photon bombardment tailoring of a trap-sized packet", c,
            {1e-11}, 0.0, 1.0, {0.01, 0.02, 0.2, 1.0}));
    }
    {
        // Catalog reference sphere; the CLI `tables` path sweeps radii itself.
        ScenarioConfig c = base_config(1e-7, 2600.0, 1e-9, 1.0, {});
        out.push_back(make_preset("tables", "decoherence parameter catalog dump", c, {1e-9},
                                  0.0, 1.0, {}));
    }
    return out;
}

} // namespace

std::vector<double> make_sample_times(double duration, double window_start, double window_end,
                                      const std::vector<double>& eval_times) {
    std::vector<double> t = grid_times(duration, 200);
    auto push = [&](double v) {
        if (v >= 0.0 && v <= duration) t.push_back(v);
    };
    push(window_start);
    push(window_end);
    for (double v : eval_times) push(v);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end(),
                        [](double a, double b) {
                            return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
                        }),
            t.end());
    return t;
}

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = build_presets();
    return all;
}

const Preset& preset_by_name(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return p;
    throw std::domain_error("unknown preset '" + name + "'");
}

std::string family_tag(Family f) {
    switch (f) {
        case Family::free_evolution: return "free";
        case Family::gravity_only: return "grav";
        case Family::decoherence_only: return "deco";
        case Family::decoherence_gravity: return "deco_grav";
    }
    return "unknown";
}

ScenarioConfig family_config(const ScenarioConfig& base, Family f) {
    ScenarioConfig c = base;
    switch (f) {
        case Family::free_evolution:
            c.gravity = false;
            c.channels.clear();
            break;
        case Family::gravity_only:
            c.gravity = true;
            c.channels.clear();
            break;
        case Family::decoherence_only:
            c.gravity = false;
            break;
        case Family::decoherence_gravity:
            c.gravity = true;
            break;
    }
    // Families without jumps are deterministic: one trajectory suffices.
    if (c.channels.empty()) c.trajectory_count = 1;
    return c;
}

std::vector<Family> preset_families(const Preset& preset) {
    if (preset.config.channels.empty())
        return {Family::free_evolution, Family::gravity_only};
    return {Family::free_evolution, Family::gravity_only, Family::decoherence_only,
            Family::decoherence_gravity};
}

} // namespace nanofall
