#pragma once

#include "nanofall/core_state.hpp"

namespace nanofall {

/// Spread-dependent spring constant of the Gaussian self-gravity scheme.
/// The structural amplification factor acts only on the short-distance
/// branch (spread <= 2R); amplification = 1 recovers the plain scheme with
/// a C^2-continuous spring at the crossover.
struct SpringModel {
    NanosphereSpec sphere;
    double amplification = 1.0;

    SpringModel() = default;
    SpringModel(const NanosphereSpec& s, double amp = 1.0);

    double crossover() const { return 2.0 * sphere.radius; }
};

enum class GravityRegime { macroscopic, mesoscopic, single_particle };

/// Self-consistent stationary packet: free diffusion balances self-gravity.
struct BoundState {
    double spread = 0.0;   // m
    double A_static = 0.0; // m^-2, real
    double energy = 0.0;   // J
    GravityRegime regime = GravityRegime::mesoscopic;
};

/// Nucleic wavepacket entering the structural short-distance correction.
/// Defaults are calibrated so the nucleic/atomic density ratio is 8000 at
/// 2.6x water density; both fields can be overridden.
struct NucleusSpec {
    double mass = 1.0890854532444655e-26; // kg
    double radius = 5e-12;                // m, zero-point packet scale
};

/// Exact self-interaction of a homogeneous sphere at centre separation d:
/// a quintic polynomial inside d <= 2R, the Coulomb form -G M^2 / d outside.
/// The branches agree in value and first three derivatives at d = 2R; the
/// difference turns on quartically in (d - 2R).
double v_eff(double d, const NanosphereSpec& sphere);

/// Spring constant k(<r^2>): quintic-derived branch below the crossover
/// (times the model's amplification), G M^2 / <r^2>^{3/2} above.
double spring_k(double r2, const SpringModel& model);

/// Conserved potential: antiderivative of k/2 in <r^2>, matched so that
/// v_cons(<r^2>) = v_eff(sqrt(<r^2>)) (exact identity when amplification = 1).
double v_cons(double r2, const SpringModel& model);

/// E = (3 hbar^2 / 2M) |A|^2 / Re A + v_cons(3 / (4 Re A)).
/// Depends only on A: invariant under translations and boosts of the state.
double conserved_energy(const GaussianState& state, const SpringModel& model);

/// Solves A = sqrt(k(3/(4A)) M) / (2 hbar) by bracketed bisection on log A.
/// Throws NumericError on non-convergence.
BoundState bound_state(const SpringModel& model);

/// Critical decoherence strength. `exact` is k(<r^2_BS>)/(2 hbar) from the
/// solved bound state; the two estimate fields are the order-of-magnitude
/// laws G^4 M^11 / hbar^7 and G M^2 / (R^3 hbar); `table_estimate` selects
/// the one matching the bound state's branch.
struct CriticalLambda {
    double exact = 0.0;                 // m^-2 s^-1
    double single_particle_estimate = 0.0;
    double macroscopic_estimate = 0.0;
    double table_estimate = 0.0;
    GravityRegime regime = GravityRegime::mesoscopic;
};

CriticalLambda critical_lambda(const SpringModel& model);

/// Ratio of nucleic to atomic mass density, (m/r^3) / (M/R^3).
double structural_amplification(const NanosphereSpec& sphere, const NucleusSpec& nucleus);

struct MetastablePair {
    BoundState inner;  // amplified spring (metastable)
    BoundState outer;  // plain spring
    bool distinct = false;
};

/// Bound states with and without the structural amplification. In regimes
/// where amplification cannot act (single-particle branch) the two coincide
/// and `distinct` is false.
MetastablePair metastable_pair(const NanosphereSpec& sphere, const NucleusSpec& nucleus);

/// v_thermal / v_quant = sqrt(2 k_B T / M) / (h / (M * spread)).
double velocity_ratio(const NanosphereSpec& sphere, double temperature, const BoundState& bound);

} // namespace nanofall
