#pragma once

#include <string>
#include <vector>

#include "nanofall/core_state.hpp"
#include "nanofall/self_gravity.hpp"

namespace nanofall {

/// (gamma, alpha, Lambda) triple of one decoherence mechanism.
/// Lambda = gamma * alpha holds by construction.
struct ModelParams {
    std::string id;
    double gamma = 0.0;   // s^-1
    double alpha = 0.0;   // m^-2
    double lambda = 0.0;  // m^-2 s^-1
};

ModelParams make_params(std::string id, double gamma, double alpha);

// --- non-exotic mechanisms -------------------------------------------------

/// Residual-gas scattering from the microscopic formulas:
///   alpha  = m_a k_B T / (2 pi hbar^2)
///   Lambda = (8 sqrt(2 pi) / (3 sqrt 3)) m_a v_a p R^2 / hbar^2,
/// v_a = sqrt(8 k_B T / (pi m_a)). p = 0 gives gamma = Lambda = 0.
ModelParams gas_params(const EnvironmentSpec& env, const NanosphereSpec& sphere);

/// Same mechanism through the rounded power laws (gamma = 1e11 R^2 sqrt(T),
/// alpha = 1e19 T at low pressure); cross-check path for the catalog.
ModelParams gas_params_printed(const EnvironmentSpec& env, const NanosphereSpec& sphere);

struct BlackbodyParams {
    ModelParams scatter;   // thermal photons of the environment
    ModelParams emission;  // photons emitted at internal temperature T_i
};

/// Blackbody decoherence: alpha_scatter = (k_B T / (pi^{3/2} hbar c))^2 with
/// Lambda_scatter = 1e36 R^6 T^9; alpha_emission = 4e4 T_i^2 with
/// Lambda_emission = (5/6)e9 R^3 T_i^6 (coefficients as rounded laws).
BlackbodyParams blackbody_params(const EnvironmentSpec& env, const NanosphereSpec& sphere);

/// Rounded-law scatter alpha (4e4 T^2), exposed for the cross-check.
double blackbody_scatter_alpha_printed(const EnvironmentSpec& env);

// --- exotic mechanisms -----------------------------------------------------

ModelParams grw_params(const NanosphereSpec& sphere, double gamma0 = 1e-16, double alpha0 = 1e14);

/// Scale function of the mass-squared localisation rate, a = 1e-7 m:
///   f(R) = (3/2)(a/R)^4 [1 - 2(a/R)^2 + (1 + 2(a/R)^2) e^{-(R/a)^2}].
/// Evaluated by series for R/a < 0.1 to avoid cancellation; 1/4 at R -> 0.
double csl_scale_function(double radius);

ModelParams csl_params(const NanosphereSpec& sphere, double gamma0 = 1e-16, double alpha0 = 1e14);

/// Quantum-gravity collapse parameters from the rounded laws
/// Lambda = 3e19 (M / 1e-17 kg)^2, alpha = 1e-6 m^-2 (mutually consistent
/// with the tabulated values).
ModelParams qg_params(const NanosphereSpec& sphere);

/// Symbolic forms Lambda = c^4 M^2 m0^4 / (hbar^3 m_P^3),
/// alpha = c^2 m0^4 / (hbar^2 m_P^2); cross-check path (evaluates a factor
/// of a few tens below the rounded laws).
ModelParams qg_params_microscopic(const NanosphereSpec& sphere);

/// Gravitationally induced collapse: Lambda = G M^2/(2 R^3 hbar), alpha = R^-2.
ModelParams dp_params(const NanosphereSpec& sphere);

// --- planning calculators ----------------------------------------------------

double total_lambda(const std::vector<ModelParams>& params);

enum class WavelengthRegime { LWL, SWL, boundary };

/// Compares the localisation length alpha^{-1/2} to the packet spread with a
/// factor-10 hysteresis band.
WavelengthRegime regime(double state_spread, double alpha);

struct SensitivityInput {
    double velocity_spread = 0.0;   // m s^-1
    double flight_time = 0.0;       // s
    double mass = 0.0;              // kg
    double relative_accuracy = 0.0; // <= 1
};

/// Smallest Lambda distinguishable from the ballistic spread:
/// Lambda = 9 eps dv^2 M^2 / (2 hbar^2 t).
double discriminable_lambda(const SensitivityInput& input);

/// mu = -log10(gamma0) - 2 log10(m_e / amu).
double classicality_mu(double gamma0);

/// Smallest drop separation d with London-force drift
/// (3 A_H R^2 / d^3) t^2 / (2 M) <= max_drift.
double london_min_separation(const NanosphereSpec& sphere, double flight_time, double max_drift);

struct CoolingBudget {
    double momentum_ratio = 0.0;   // total photon momentum / initial momentum
    double recoil_velocity = 0.0;  // m s^-1, single-photon recoil limit
};

CoolingBudget cooling_budget(double photon_count, double wavelength,
                             const NanosphereSpec& sphere, double v_initial);

// --- catalog ----------------------------------------------------------------

/// Everything above evaluated for one (sphere, environment), plus the
/// critical decoherence parameter; serialized by catalog_json().
struct DecoherenceCatalog {
    NanosphereSpec sphere;
    EnvironmentSpec environment;
    ModelParams gas, gas_printed;
    BlackbodyParams blackbody;
    ModelParams grw, csl, qg, qg_microscopic, dp;
    CriticalLambda lambda_crit;
    double non_exotic_total = 0.0;
};

DecoherenceCatalog make_catalog(const NanosphereSpec& sphere, const EnvironmentSpec& env);

/// JSON document for the CLI `tables` subcommand.
std::string catalog_json(const std::vector<DecoherenceCatalog>& catalogs);

} // namespace nanofall
