#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nanofall/decoherence_models.hpp"
#include "nanofall/presets.hpp"
#include "nanofall/scenario_io.hpp"
#include "test_helpers.hpp"

using namespace nanofall;

namespace {
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
} // namespace

TEST_CASE("minimal config gets defaults and echoes consistently") {
    const std::string minimal = R"({
        "radius": 1e-7, "density": 2600.0,
        "initial_spread": 1e-9, "duration": 300.0
    })";
    const ScenarioConfig c = parse_config_text(minimal);
    CHECK(c.sphere.radius == 1e-7);
    CHECK(c.sphere.internal_temperature == 2000.0);
    CHECK(c.environment.gas_temperature == 16.0);
    CHECK(c.environment.gas_pressure == 1e-13);
    CHECK(c.trajectory_count == 10000);
    CHECK(c.gravity == false);
    CHECK(c.sample_times.size() == 201);
    CHECK(c.sample_times.front() == 0.0);
    CHECK(c.sample_times.back() == 300.0);

    // Echo round-trip: serialize -> parse -> serialize is a fixed point.
    const std::string echoed = serialize_config(c);
    const ScenarioConfig c2 = parse_config_text(echoed);
    CHECK(serialize_config(c2) == echoed);
}

TEST_CASE("config errors carry the offending key") {
    auto message_of = [](const std::string& text) {
        try {
            parse_config_text(text);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message_of(R"({"radius": -1e-7, "density": 2600.0,
                         "initial_spread": 1e-9, "duration": 1.0})")
              .find("radius") != std::string::npos);
    CHECK(message_of(R"({"density": 2600.0, "initial_spread": 1e-9, "duration": 1.0})")
              .find("radius") != std::string::npos);
    CHECK(message_of(R"({"radius": 1e-7, "density": 2600.0, "initial_spread": 1e-9,
                         "duration": 1.0, "bogus_knob": 3})")
              .find("bogus_knob") != std::string::npos);
    CHECK(message_of(R"({"radius": 1e-7, "density": 2600.0, "initial_spread": 1e-9,
                         "duration": 1.0, "channels": [{"gamma": 1.0}]})")
              .find("channels[0]") != std::string::npos);
    CHECK(message_of("not json").find("JSON") != std::string::npos);
}

TEST_CASE("preset configs round-trip through the serializer") {
    const Preset& fig4 = preset_by_name("fig4_gold_dp");
    const std::string text = serialize_config(fig4.config);
    const ScenarioConfig back = parse_config_text(text);
    CHECK(serialize_config(back) == text);
    CHECK(back.sphere.density == fig4.config.sphere.density);
    CHECK(back.channels.size() == 1);
    CHECK(back.channels[0].alpha == 1e13);
}

TEST_CASE("preset parameters match the published captions") {
    struct Ref {
        const char* name;
        double radius, density, spread, alpha, gamma, duration;
    };
    // Transcribed caption table.
    const Ref refs[] = {
        {"fig2_gold_strong", 1e-7, 20000.0, 1e-9, 1e18, 1.0, 300.0},
        {"fig3_silicate_dp", 1e-7, 2600.0, 1e-7, 1e13, 1.0, 300.0},
        {"fig4_gold_dp", 1e-7, 20000.0, 1e-9, 1e13, 1.0, 1000.0},
        {"fig5_gold_strong_long", 1e-7, 20000.0, 1e-9, 1e16, 1.0, 1000.0},
        {"fig6_gold_weak_wide", 1e-7, 20000.0, 1e-7, 1e11, 1.0, 1000.0},
        {"tailoring", 1e-7, 20000.0, 1e-11, 1e16, 1e3, 1.0},
    };
    for (const auto& r : refs) {
        const Preset& p = preset_by_name(r.name);
        CHECK(p.config.sphere.radius == r.radius);
        CHECK(p.config.sphere.density == r.density);
        CHECK(p.initial_spreads.front() == r.spread);
        REQUIRE(p.config.channels.size() == 1);
        CHECK(p.config.channels[0].alpha == r.alpha);
        CHECK(p.config.channels[0].gamma == r.gamma);
        CHECK(p.config.duration == r.duration);
        CHECK(p.config.trajectory_count == 10000);
    }
    const Preset& fig1 = preset_by_name("fig1");
    CHECK(fig1.config.sphere.radius == 1e-7);
    CHECK(fig1.config.sphere.density == 2650.0);
    CHECK(fig1.config.duration == 86400.0);
    CHECK(fig1.config.channels.empty());
    CHECK(fig1.initial_spreads.size() == 4);

    CHECK_THROWS_AS(preset_by_name("fig42"), std::domain_error);
}

TEST_CASE("family expansion") {
    const Preset& fig4 = preset_by_name("fig4_gold_dp");
    const auto fams = preset_families(fig4);
    CHECK(fams.size() == 4);
    const auto free_cfg = family_config(fig4.config, Family::free_evolution);
    CHECK(!free_cfg.gravity);
    CHECK(free_cfg.channels.empty());
    CHECK(free_cfg.trajectory_count == 1); // deterministic family
    const auto dg = family_config(fig4.config, Family::decoherence_gravity);
    CHECK(dg.gravity);
    CHECK(dg.channels.size() == 1);

    const Preset& fig1 = preset_by_name("fig1");
    CHECK(preset_families(fig1).size() == 2); // free and gravity curves only
}

TEST_CASE("sample times contain the grid, window ends, and eval times") {
    const auto times = make_sample_times(300.0, 270.0, 300.0, {200.0});
    CHECK(times.front() == 0.0);
    CHECK(times.back() == 300.0);
    bool has200 = false, has270 = false;
    for (double t : times) {
        has200 |= t == 200.0;
        has270 |= t == 270.0;
    }
    CHECK(has200);
    CHECK(has270);
    for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i] > times[i - 1]);
}

TEST_CASE("plot data emission") {
    EnsembleStats stats;
    // Header-only for empty stats.
    emit_plotdata(stats, "/tmp/nanofall_empty.csv", "csv");
    CHECK(slurp("/tmp/nanofall_empty.csv") ==
          "t,total_spread,individual_rms,centre_rms,stderr,analytic_eq8\n");

    SampleStats s;
    s.time = 1.5;
    s.mean_individual_variance = 4e-18;
    s.centre_variance = 5e-19;
    s.total_spread = std::sqrt(4.5e-18);
    s.standard_error = 1e-11;
    s.analytic_eq8 = 2.1e-9;
    stats.samples.push_back(s);
    stats.trajectories_used = 7;

    emit_plotdata(stats, "/tmp/nanofall_row.csv", "csv");
    const std::string body = slurp("/tmp/nanofall_row.csv");
    CHECK(body.find("\r") == std::string::npos); // LF endings only
    // Round-trip: the printed total_spread reads back to the same double.
    std::stringstream ss(body);
    std::string header, row;
    std::getline(ss, header);
    std::getline(ss, row);
    double t, total;
    REQUIRE(std::sscanf(row.c_str(), "%lg,%lg", &t, &total) == 2);
    CHECK(t == 1.5);
    CHECK(total == s.total_spread);

    emit_plotdata(stats, "/tmp/nanofall_row.json", "json");
    CHECK(slurp("/tmp/nanofall_row.json").find("total_spread") != std::string::npos);
    CHECK_THROWS_AS(emit_plotdata(stats, "/tmp/x.bin", "yaml"), ConfigError);
    CHECK_THROWS_AS(emit_plotdata(stats, "/no/such/dir/x.csv", "csv"), ConfigError);
}

TEST_CASE("catalog JSON covers every mechanism") {
    const auto cat = make_catalog(NanosphereSpec(1e-7, 2600.0), EnvironmentSpec{});
    const std::string doc = catalog_json({cat});
    for (const char* key : {"gas", "bb_scatter", "bb_emission", "grw", "csl", "qg", "dp",
                            "lambda_crit", "table_estimate", "nucleons"})
        CHECK(doc.find(key) != std::string::npos);
}
