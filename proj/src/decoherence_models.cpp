#include "nanofall/decoherence_models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nanofall {

namespace {
constexpr double kCslScale = 1e-7; // m, localisation length scale of the mass law
}

ModelParams make_params(std::string id, double gamma, double alpha) {
    if (!(gamma >= 0.0) || !(alpha >= 0.0))
        throw std::domain_error("ModelParams: negative parameter");
    ModelParams p;
    p.id = std::move(id);
    p.gamma = gamma;
    p.alpha = alpha;
    p.lambda = gamma * alpha;
    return p;
}

ModelParams gas_params(const EnvironmentSpec& env, const NanosphereSpec& sphere) {
    env.validate();
    sphere.validate();
    const auto& k = constants();
    const double T = env.gas_temperature;
    const double m_a = env.gas_molecule_mass;
    const double alpha = m_a * k.k_B * T / (2.0 * std::numbers::pi * k.hbar * k.hbar);
    if (env.gas_pressure == 0.0) return make_params("gas", 0.0, alpha);
    const double v_a = std::sqrt(8.0 * k.k_B * T / (std::numbers::pi * m_a));
    const double coeff = 8.0 * std::sqrt(2.0 * std::numbers::pi) / (3.0 * std::sqrt(3.0));
    const double lambda = coeff * m_a * v_a * env.gas_pressure * sphere.radius * sphere.radius /
                          (k.hbar * k.hbar);
    return make_params("gas", lambda / alpha, alpha);
}

ModelParams gas_params_printed(const EnvironmentSpec& env, const NanosphereSpec& sphere) {
    env.validate();
    sphere.validate();
    const double T = env.gas_temperature;
    const double R = sphere.radius;
    const double alpha = 1e19 * T;
    const double gamma = env.gas_pressure == 0.0 ? 0.0 : 1e11 * R * R * std::sqrt(T);
    return make_params("gas_printed", gamma, alpha);
}

BlackbodyParams blackbody_params(const EnvironmentSpec& env, const NanosphereSpec& sphere) {
    env.validate();
    sphere.validate();
    const auto& k = constants();
    const double T = env.environment_temperature;
    const double Ti = sphere.internal_temperature;
    const double R = sphere.radius;

    const double root = k.k_B * T / (std::pow(std::numbers::pi, 1.5) * k.hbar * k.c);
    const double alpha_sc = root * root;
    const double lambda_sc = 1e36 * std::pow(R, 6) * std::pow(T, 9);

    const double alpha_em = 4e4 * Ti * Ti;
    const double lambda_em = (5.0 / 6.0) * 1e9 * R * R * R * std::pow(Ti, 6);

    BlackbodyParams out;
    out.scatter = make_params("bb_scatter", alpha_sc > 0.0 ? lambda_sc / alpha_sc : 0.0, alpha_sc);
    out.emission = make_params("bb_emission", alpha_em > 0.0 ? lambda_em / alpha_em : 0.0, alpha_em);
    return out;
}

double blackbody_scatter_alpha_printed(const EnvironmentSpec& env) {
    return 4e4 * env.environment_temperature * env.environment_temperature;
}

ModelParams grw_params(const NanosphereSpec& sphere, double gamma0, double alpha0) {
    sphere.validate();
    return make_params("grw", sphere.nucleon_count() * gamma0, alpha0);
}

double csl_scale_function(double radius) {
    if (!(radius > 0.0)) throw std::domain_error("csl_scale_function: radius must be positive");
    const double u = (radius / kCslScale) * (radius / kCslScale); // (R/a)^2
    if (u < 1e-2) {
        // Series of the bracket / u^2; direct evaluation cancels catastrophically.
        return 1.5 * (1.0 / 6.0 - u / 12.0 + u * u / 40.0 - u * u * u / 180.0);
    }
    const double w = 1.0 / u; // (a/R)^2
    return 1.5 * w * w * (1.0 - 2.0 * w + (1.0 + 2.0 * w) * std::exp(-u));
}

ModelParams csl_params(const NanosphereSpec& sphere, double gamma0, double alpha0) {
    sphere.validate();
    const double n = sphere.nucleon_count();
    return make_params("csl", n * n * gamma0 * csl_scale_function(sphere.radius), alpha0);
}

ModelParams qg_params(const NanosphereSpec& sphere) {
    sphere.validate();
    const double m_ratio = sphere.mass() / 1e-17;
    const double lambda = 3e19 * m_ratio * m_ratio;
    const double alpha = 1e-6;
    return make_params("qg", lambda / alpha, alpha);
}

ModelParams qg_params_microscopic(const NanosphereSpec& sphere) {
    sphere.validate();
    const auto& k = constants();
    const double m0 = k.amu;
    const double M = sphere.mass();
    const double alpha = k.c * k.c * std::pow(m0, 4) / (k.hbar * k.hbar * k.m_planck * k.m_planck);
    const double lambda = std::pow(k.c, 4) * M * M * std::pow(m0, 4) /
                          (std::pow(k.hbar, 3) * std::pow(k.m_planck, 3));
    return make_params("qg_microscopic", lambda / alpha, alpha);
}

ModelParams dp_params(const NanosphereSpec& sphere) {
    sphere.validate();
    const auto& k = constants();
    const double M = sphere.mass();
    const double R = sphere.radius;
    const double lambda = k.G * M * M / (2.0 * R * R * R * k.hbar);
    const double alpha = 1.0 / (R * R);
    return make_params("dp", lambda / alpha, alpha);
}

double total_lambda(const std::vector<ModelParams>& params) {
    double sum = 0.0;
    for (const auto& p : params) sum += p.lambda;
    return sum;
}

WavelengthRegime regime(double state_spread, double alpha) {
    if (!(state_spread > 0.0) || !(alpha > 0.0))
        throw std::domain_error("regime: spread and alpha must be positive");
    const double loc_length = 1.0 / std::sqrt(alpha);
    if (loc_length >= 10.0 * state_spread) return WavelengthRegime::LWL;
    if (loc_length <= 0.1 * state_spread) return WavelengthRegime::SWL;
    return WavelengthRegime::boundary;
}

double discriminable_lambda(const SensitivityInput& in) {
    if (!(in.velocity_spread > 0.0) || !(in.flight_time > 0.0) || !(in.mass > 0.0) ||
        !(in.relative_accuracy > 0.0) || !(in.relative_accuracy <= 1.0))
        throw std::domain_error("discriminable_lambda: invalid input");
    const double hbar = constants().hbar;
    return 9.0 * in.relative_accuracy * in.velocity_spread * in.velocity_spread * in.mass *
           in.mass / (2.0 * hbar * hbar * in.flight_time);
}

double classicality_mu(double gamma0) {
    if (!(gamma0 > 0.0)) throw std::domain_error("classicality_mu: gamma0 must be positive");
    const auto& k = constants();
    return -std::log10(gamma0) - 2.0 * std::log10(k.m_electron / k.amu);
}

double london_min_separation(const NanosphereSpec& sphere, double flight_time, double max_drift) {
    sphere.validate();
    if (!(flight_time >= 0.0) || !(max_drift > 0.0))
        throw std::domain_error("london_min_separation: invalid input");
    const auto& k = constants();
    const double R = sphere.radius;
    // Drift under the constant force 3 A_H R^2 / d^3 over the flight.
    const double d3 = 3.0 * k.hamaker_A * R * R * flight_time * flight_time /
                      (2.0 * sphere.mass() * max_drift);
    return std::cbrt(d3);
}

CoolingBudget cooling_budget(double photon_count, double wavelength,
                             const NanosphereSpec& sphere, double v_initial) {
    sphere.validate();
    if (!(photon_count >= 0.0) || !(wavelength > 0.0) || !(v_initial > 0.0))
        throw std::domain_error("cooling_budget: invalid input");
    const double h = constants().h();
    const double M = sphere.mass();
    CoolingBudget out;
    out.momentum_ratio = photon_count * h / wavelength / (M * v_initial);
    out.recoil_velocity = h / (wavelength * M);
    return out;
}

DecoherenceCatalog make_catalog(const NanosphereSpec& sphere, const EnvironmentSpec& env) {
    DecoherenceCatalog cat;
    cat.sphere = sphere;
    cat.environment = env;
    cat.gas = gas_params(env, sphere);
    cat.gas_printed = gas_params_printed(env, sphere);
    cat.blackbody = blackbody_params(env, sphere);
    cat.grw = grw_params(sphere);
    cat.csl = csl_params(sphere);
    cat.qg = qg_params(sphere);
    cat.qg_microscopic = qg_params_microscopic(sphere);
    cat.dp = dp_params(sphere);
    cat.lambda_crit = critical_lambda(SpringModel(sphere));
    cat.non_exotic_total =
        total_lambda({cat.gas, cat.blackbody.scatter, cat.blackbody.emission});
    return cat;
}

namespace {

nlohmann::json params_json(const ModelParams& p) {
    return {{"id", p.id}, {"gamma", p.gamma}, {"alpha", p.alpha}, {"lambda", p.lambda}};
}

const char* regime_name(GravityRegime r) {
    switch (r) {
        case GravityRegime::macroscopic: return "macroscopic";
        case GravityRegime::single_particle: return "single_particle";
        default: return "mesoscopic";
    }
}

} // namespace

std::string catalog_json(const std::vector<DecoherenceCatalog>& catalogs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : catalogs) {
        nlohmann::json j;
        j["sphere"] = {{"radius", c.sphere.radius},
                       {"density", c.sphere.density},
                       {"mass", c.sphere.mass()},
                       {"nucleons", c.sphere.nucleon_count()},
                       {"internal_temperature", c.sphere.internal_temperature}};
        j["environment"] = {{"gas_temperature", c.environment.gas_temperature},
                            {"gas_pressure", c.environment.gas_pressure},
                            {"gas_molecule_mass", c.environment.gas_molecule_mass},
                            {"environment_temperature", c.environment.environment_temperature}};
        j["non_exotic"] = {{"gas", params_json(c.gas)},
                           {"gas_printed_law", params_json(c.gas_printed)},
                           {"bb_scatter", params_json(c.blackbody.scatter)},
                           {"bb_emission", params_json(c.blackbody.emission)},
                           {"total_lambda", c.non_exotic_total}};
        j["exotic"] = {{"grw", params_json(c.grw)},
                       {"csl", params_json(c.csl)},
                       {"qg", params_json(c.qg)},
                       {"qg_microscopic", params_json(c.qg_microscopic)},
                       {"dp", params_json(c.dp)}};
        j["lambda_crit"] = {{"exact", c.lambda_crit.exact},
                            {"single_particle_estimate", c.lambda_crit.single_particle_estimate},
                            {"macroscopic_estimate", c.lambda_crit.macroscopic_estimate},
                            {"table_estimate", c.lambda_crit.table_estimate},
                            {"regime", regime_name(c.lambda_crit.regime)}};
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

} // namespace nanofall
