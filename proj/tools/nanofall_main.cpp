// Command-line front end: scenario presets, config runs, and the
// decoherence-parameter catalog. Emits curve data as CSV/JSON; plotting is
// left to external tools.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nanofall/decoherence_models.hpp"
#include "nanofall/presets.hpp"
#include "nanofall/scenario_io.hpp"

namespace {

using namespace nanofall;

struct RunArgs {
    std::string preset;
    std::string config_path;
    std::uint64_t seed = 1;
    int trajectories = 0; // 0 = keep preset/config value
    int workers = 0;
    std::string out = "out";
    std::string format = "csv";
    bool filter_gas = false;
};

std::string variant_tag(double spread, bool multiple) {
    if (!multiple) return "";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "_d%.2e", spread);
    return buf;
}

double spread_at(const EnsembleStats& stats, double t) {
    for (const auto& s : stats.samples)
        if (std::abs(s.time - t) <= 1e-12 * std::max(1.0, t)) return s.total_spread;
    return std::numeric_limits<double>::quiet_NaN();
}

int run_tables(const std::string& out_path, double density) {
    std::vector<DecoherenceCatalog> cats;
    EnvironmentSpec env; // 16 K, 1e-13 Pa defaults
    for (double radius : {1e-5, 1e-6, 1e-7, 1e-8})
        cats.push_back(make_catalog(NanosphereSpec(radius, density), env));
    const std::string doc = catalog_json(cats);
    if (out_path.empty() || out_path == "-") {
        std::cout << doc;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw ConfigError("cannot open output file '" + out_path + "'");
        f << doc;
    }
    return 0;
}

int run_scenarios(const RunArgs& args) {
    std::vector<std::pair<double, ScenarioConfig>> variants; // (initial spread, base config)
    std::vector<Family> families;
    std::vector<double> eval_times;

    if (!args.preset.empty()) {
        const Preset& p = preset_by_name(args.preset);
        if (p.name == "tables") return run_tables(args.out, p.config.sphere.density);
        for (double s : p.initial_spreads) {
            ScenarioConfig c = p.config;
            c.initial_spread = s;
            variants.emplace_back(s, c);
        }
        families = preset_families(p);
        eval_times = p.eval_times;
    } else {
        ScenarioConfig c = parse_config(args.config_path);
        variants.emplace_back(c.initial_spread, c);
        families = preset_families(Preset{"", "", c, {c.initial_spread}, 0, c.duration, {}});
        eval_times = {c.duration};
    }

    for (auto& [s, c] : variants) {
        c.master_seed = args.seed;
        if (args.trajectories > 0) c.trajectory_count = args.trajectories;
        c.filter_gas_collisions = args.filter_gas;
    }

    // Echo the effective base configuration.
    {
        std::ofstream echo(args.out + "_config.json", std::ios::binary);
        if (!echo) throw ConfigError("cannot open '" + args.out + "_config.json'");
        echo << serialize_config(variants.front().second);
    }

    const std::string ext = args.format == "json" ? ".json" : ".csv";
    std::map<std::string, EnsembleStats> curves;
    for (const auto& [spread0, base] : variants) {
        const std::string vtag = variant_tag(spread0, variants.size() > 1);
        for (Family f : families) {
            ScenarioConfig c = family_config(base, f);
            EnsembleStats stats = run_ensemble(c, args.workers);
            const std::string name = family_tag(f) + vtag;
            emit_plotdata(stats, args.out + "_" + name + ext, args.format);
            curves[name] = std::move(stats);
        }
    }

    // Gap summary at the quoted evaluation times.
    for (double t : eval_times) {
        std::printf("t = %g s\n", t);
        for (const auto& [name, stats] : curves) {
            const auto* last = &stats.samples.back();
            std::printf("  %-18s total_spread = %.6e  (eq8 = %.6e)\n", name.c_str(),
                        spread_at(stats, t), last->analytic_eq8);
        }
        auto gap = [&](const std::string& a, const std::string& b) {
            if (!curves.count(a) || !curves.count(b)) return;
            const double ga = spread_at(curves.at(a), t);
            const double gb = spread_at(curves.at(b), t);
            std::printf("  gap %s - %s = %.6e\n", a.c_str(), b.c_str(), ga - gb);
        };
        if (variants.size() == 1) {
            gap("deco", "free");
            gap("deco_grav", "grav");
            gap("grav", "free");
            gap("deco_grav", "free");
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nanofall: spread of freely falling nanospheres under collapse noise and self-gravity"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "run a preset or config file and emit curve data");
    auto* preset_opt = run->add_option("--preset", run_args.preset, "preset name (see `presets`)");
    auto* config_opt = run->add_option("--config", run_args.config_path, "JSON scenario file");
    preset_opt->excludes(config_opt);
    run->add_option("--seed", run_args.seed, "master seed");
    run->add_option("--trajectories", run_args.trajectories, "override trajectory count");
    run->add_option("--workers", run_args.workers, "worker threads (0 = all cores)");
    run->add_option("--out", run_args.out, "output path prefix");
    run->add_option("--format", run_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    run->add_flag("--filter-gas-collisions", run_args.filter_gas,
                  "drop trajectories whose gas channel fired");

    std::string tables_out = "-";
    double tables_density = 2600.0;
    auto* tables = app.add_subcommand("tables", "decoherence parameter catalog for R = 1e-5..1e-8 m");
    tables->add_option("--out", tables_out, "output file (- for stdout)");
    tables->add_option("--density", tables_density, "sphere density in kg/m^3");

    auto* list = app.add_subcommand("presets", "list available presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& p : nanofall::presets())
                std::printf("%-22s %s\n", p.name.c_str(), p.description.c_str());
            return 0;
        }
        if (tables->parsed()) return run_tables(tables_out, tables_density);
        if (run->parsed()) {
            if (run_args.preset.empty() && run_args.config_path.empty())
                throw nanofall::ConfigError("run: need --preset or --config");
            return run_scenarios(run_args);
        }
    } catch (const nanofall::NumericError& e) {
        std::fprintf(stderr, "numeric failure: %s (t = %g s)\n", e.what(), e.time);
        return 2;
    } catch (const nanofall::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
