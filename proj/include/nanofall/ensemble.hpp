#pragma once

#include <cstdint>
#include <vector>

#include "nanofall/collapse.hpp"
#include "nanofall/core_state.hpp"
#include "nanofall/dynamics.hpp"

namespace nanofall {

struct ScenarioConfig {
    NanosphereSpec sphere;
    EnvironmentSpec environment;

    double initial_spread = 0.0; // m
    Vec3 initial_centre;
    Vec3 initial_velocity;

    bool gravity = false;
    double amplification = 1.0;
    std::vector<JumpChannel> channels;
    double qmupl_lambda = 0.0;

    double duration = 0.0;            // s
    std::vector<double> sample_times; // sorted, within [0, duration]
    int trajectory_count = 1;
    std::uint64_t master_seed = 1;
    bool filter_gas_collisions = false;

    IntegratorConfig integrator;

    void validate() const;
    EvolutionMode mode() const { return {gravity, qmupl_lambda, amplification}; }
};

struct Snapshot {
    double time = 0.0;
    cplx A{0.0, 0.0};
    CVec3 B;
    double spread = 0.0;
    Vec3 centre;
    Vec3 velocity;
};

struct TrajectoryRecord {
    std::vector<Snapshot> snapshots; // one per sample time, in order
    std::vector<JumpEvent> jumps;
    bool gas_collided = false;
};

struct SampleStats {
    double time = 0.0;
    double mean_individual_variance = 0.0; // m^2
    double centre_variance = 0.0;          // m^2, about the ensemble mean
    double total_spread = 0.0;             // sqrt of the two above
    double standard_error = 0.0;           // delta-method error of total_spread
    double analytic_eq8 = 0.0;             // m, jump-channel Lambda only
};

struct EnsembleStats {
    std::vector<SampleStats> samples;
    int trajectories_used = 0;
    int trajectories_dropped = 0;
};

struct EnsembleOptions {
    int workers = 0;                            // 0 = hardware concurrency
    std::vector<double> velocity_sample_times;  // must be sample times
};

struct EnsembleResult {
    EnsembleStats stats;
    // velocities[k][i]: trajectory i's mean velocity at velocity_times[k]
    std::vector<double> velocity_times;
    std::vector<std::vector<Vec3>> velocities;
    std::vector<std::uint8_t> dropped; // per trajectory, when filtering
};

/// One stochastic realization; fully determined by (master_seed, index).
TrajectoryRecord run_trajectory(const ScenarioConfig& config, int trajectory_index);

/// Trajectories run independently (block-parallel); the reduction folds
/// fixed-size blocks in index order, so results are bit-identical for any
/// worker count.
EnsembleStats run_ensemble(const ScenarioConfig& config, int workers = 0);
EnsembleResult run_ensemble_full(const ScenarioConfig& config, const EnsembleOptions& options);

/// Ensemble spread law: <r^2>(t) = r2_0 + 9 hbar^2 t^2 / (4 M^2 r2_0)
///                                + Lambda hbar^2 t^3 / (2 M^2); returns sqrt.
double analytic_grw_spread(double t, double initial_r2, double mass, double lambda);

/// Asymptotic individual spread (hbar / (M Lambda))^{1/4}.
double equilibrium_spread(double mass, double lambda);

struct Histogram {
    double lo = 0.0, hi = 0.0;
    std::vector<std::size_t> modulus;        // |v| counts
    std::vector<std::size_t> axis[3];        // per-axis counts (signed values)
    std::size_t total = 0;

    double peak_modulus() const;             // centre of the highest |v| bin
};

/// Histogram of per-trajectory mean velocities at one recorded time.
/// Out-of-range values are clamped into the edge bins, so the histogram mass
/// equals the trajectory count.
Histogram velocity_histogram(const std::vector<Vec3>& velocities, int bins, double lo, double hi);
Histogram velocity_histogram(const EnsembleResult& result, double time, int bins,
                             double lo, double hi);

} // namespace nanofall
