#pragma once

#include <stdexcept>
#include <string>

#include "nanofall/core_state.hpp"
#include "nanofall/self_gravity.hpp"

namespace nanofall {

/// Integration failure with the simulated time at which it occurred.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double t) : std::runtime_error(what), time(t) {}
    double time = 0.0; // s
};

struct EvolutionMode {
    bool gravity = false;
    double qmupl_lambda = 0.0;   // m^-2 s^-1, adds +Lambda to dA/dt
    double amplification = 1.0;  // spring amplification when gravity is on
};

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;        // in units of A (m^-2); 0 = purely relative
    double max_step = 0.0;       // s; 0 = unlimited
    bool dense_output = true;    // drivers stop exactly at event times
};

struct StateDerivative {
    cplx dA;   // m^-2 s^-1
    CVec3 dB;  // m^-1 s^-1
    cplx dC;   // s^-1
};

/// Per-component equations of motion of the Gaussian parameters:
///   dA/dt = -2 i hbar A^2 / M + i k(3/(4 Re A)) / (2 hbar) [gravity] + Lambda
///   dB/dt = -2 i hbar A B / M
///   dC/dt =  i hbar (B.B - 6 A) / (2 M)
/// The spring argument is the packet-frame second moment 3/(4 Re A), never B.
StateDerivative derivative(const GaussianState& state, const EvolutionMode& mode,
                           const NanosphereSpec& sphere);

/// Advances only the spread parameter: the A equation is closed in A.
/// Free/QMUPL-off spans use the exact closed form, everything else the
/// adaptive Runge-Kutta integrator.
cplx evolve_a(cplx A, double duration, const EvolutionMode& mode, const NanosphereSpec& sphere,
              const IntegratorConfig& config = {});

/// Advances a state. The spread dynamics (A) follows the mode's equation of
/// motion; the centre moves ballistically with the state's mean velocity,
/// which keeps the self-interaction translation invariant (it acts in the
/// packet frame, not toward the lab origin). With gravity and QMUPL both off
/// the exact free closed form is used. Returned state is normalized.
GaussianState evolve(const GaussianState& state, double duration, const EvolutionMode& mode,
                     const NanosphereSpec& sphere, const IntegratorConfig& config = {});

/// Same contract as evolve() but always takes the adaptive Runge-Kutta path,
/// so it can be checked against free_closed_form.
GaussianState evolve_rk(const GaussianState& state, double duration, const EvolutionMode& mode,
                        const NanosphereSpec& sphere, const IntegratorConfig& config = {});

/// Integrates the literal (A, B, C) component system reported by derivative().
/// Exact for a packet centred at the origin; used for validation.
GaussianState evolve_components(const GaussianState& state, double duration,
                                const EvolutionMode& mode, const NanosphereSpec& sphere,
                                const IntegratorConfig& config = {});

/// Free Schroedinger propagation in closed form:
///   A(t) = A0 / D, B(t) = B0 / D, C(t) = C0 + (B0.B0/(4A0)) (1 - 1/D) - (3/2) log D
/// with D = 1 + 2 i hbar A0 t / M.
GaussianState free_closed_form(const GaussianState& state, double t, const NanosphereSpec& sphere);

/// Relative residual |Lambda - k(<r^2_BS>)/(2 hbar)| / Lambda; ~0 when Lambda
/// is the critical decoherence parameter.
double qmupl_equilibrium_check(const EvolutionMode& mode, const NanosphereSpec& sphere);

} // namespace nanofall
