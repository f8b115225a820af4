#include "nanofall/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace nanofall {

namespace {

constexpr int kBlock = 256; // reduction granularity, fixed for determinism

/// Minimal in-flight trajectory state: the spread dynamics (A) plus the
/// ballistic centre and velocity of the packet frame.
struct Packet {
    cplx A;
    Vec3 centre;
    Vec3 velocity;
};

Packet advance(Packet p, double dt, const ScenarioConfig& cfg) {
    if (dt == 0.0) return p;
    p.A = evolve_a(p.A, dt, cfg.mode(), cfg.sphere, cfg.integrator);
    p.centre += p.velocity * dt;
    return p;
}

JumpEvent do_jump(Packet& p, const JumpChannel& ch, double t, RngStream& rng,
                  const NanosphereSpec& sphere) {
    const double a_r = p.A.real();
    const double a_i = p.A.imag();
    const double alpha = ch.alpha;
    const double sigma = std::sqrt(1.0 / (4.0 * a_r) + 1.0 / (2.0 * alpha));
    Vec3 x0;
    for (int i = 0; i < 3; ++i) x0[i] = p.centre[i] + sigma * rng.normal();

    JumpEvent out;
    out.time = t;
    out.location = x0;
    out.channel = ch.label;
    out.pre_spread = std::sqrt(3.0 / (4.0 * a_r));

    const double hbar = constants().hbar;
    const double M = sphere.mass();
    Vec3 mu_new;
    for (int i = 0; i < 3; ++i)
        mu_new[i] = (2.0 * a_r * p.centre[i] + alpha * x0[i]) / (2.0 * a_r + alpha);
    for (int i = 0; i < 3; ++i)
        p.velocity[i] -= (2.0 * hbar * a_i / M) * (mu_new[i] - p.centre[i]);
    p.centre = mu_new;
    p.A += 0.5 * alpha;
    out.post_spread = std::sqrt(3.0 / (4.0 * p.A.real()));
    return out;
}

Snapshot snapshot_of(const Packet& p, double t, const NanosphereSpec& sphere) {
    Snapshot s;
    s.time = t;
    s.A = p.A;
    const double bv = sphere.mass() / constants().hbar;
    for (int i = 0; i < 3; ++i)
        s.B[i] = 2.0 * p.A * p.centre[i] + cplx(0.0, bv * p.velocity[i]);
    s.spread = std::sqrt(3.0 / (4.0 * p.A.real()));
    s.centre = p.centre;
    s.velocity = p.velocity;
    return s;
}

struct Accumulator {
    std::vector<double> sum_ind;   // sum of individual <r^2>_i
    std::vector<double> sum_mu2;   // sum of |mu_i|^2
    std::vector<Vec3> sum_mu;
    std::vector<double> sum_w;     // w = s^2 + |mu|^2
    std::vector<double> sum_w2;
    long n = 0;
    long dropped = 0;

    explicit Accumulator(std::size_t samples)
        : sum_ind(samples, 0.0), sum_mu2(samples, 0.0), sum_mu(samples), sum_w(samples, 0.0),
          sum_w2(samples, 0.0) {}

    void add(const TrajectoryRecord& rec, bool drop) {
        if (drop) {
            ++dropped;
            return;
        }
        ++n;
        for (std::size_t k = 0; k < rec.snapshots.size(); ++k) {
            const Snapshot& s = rec.snapshots[k];
            const double ind = s.spread * s.spread;
            const double mu2 = s.centre.norm2();
            sum_ind[k] += ind;
            sum_mu2[k] += mu2;
            sum_mu[k] += s.centre;
            const double w = ind + mu2;
            sum_w[k] += w;
            sum_w2[k] += w * w;
        }
    }

    void fold(const Accumulator& o) {
        n += o.n;
        dropped += o.dropped;
        for (std::size_t k = 0; k < sum_ind.size(); ++k) {
            sum_ind[k] += o.sum_ind[k];
            sum_mu2[k] += o.sum_mu2[k];
            sum_mu[k] += o.sum_mu[k];
            sum_w[k] += o.sum_w[k];
            sum_w2[k] += o.sum_w2[k];
        }
    }
};

} // namespace

void ScenarioConfig::validate() const {
    sphere.validate();
    environment.validate();
    if (!(initial_spread > 0.0)) throw std::domain_error("ScenarioConfig: initial_spread must be positive");
    if (!(duration >= 0.0)) throw std::domain_error("ScenarioConfig: duration must be non-negative");
    if (trajectory_count < 1) throw std::domain_error("ScenarioConfig: trajectory_count must be >= 1");
    if (!(qmupl_lambda >= 0.0)) throw std::domain_error("ScenarioConfig: qmupl_lambda must be non-negative");
    if (sample_times.empty()) throw std::domain_error("ScenarioConfig: sample_times must not be empty");
    double prev = 0.0;
    for (double t : sample_times) {
        if (t < prev || t < 0.0 || t > duration)
            throw std::domain_error("ScenarioConfig: sample_times must be sorted within [0, duration]");
        prev = t;
    }
    for (const auto& ch : channels) ch.validate();
}

TrajectoryRecord run_trajectory(const ScenarioConfig& config, int trajectory_index) {
    config.validate();
    RngStream rng(config.master_seed, static_cast<std::uint64_t>(trajectory_index));
    const auto jumps = sample_jump_times(config.channels, config.duration, rng);

    Packet p;
    p.A = cplx(3.0 / (4.0 * config.initial_spread * config.initial_spread), 0.0);
    p.centre = config.initial_centre;
    p.velocity = config.initial_velocity;

    TrajectoryRecord rec;
    rec.snapshots.reserve(config.sample_times.size());
    double t = 0.0;
    std::size_t j = 0;
    try {
        for (double ts : config.sample_times) {
            while (j < jumps.size() && jumps[j].time <= ts) {
                p = advance(p, jumps[j].time - t, config);
                t = jumps[j].time;
                const auto& ch = config.channels[jumps[j].channel];
                rec.jumps.push_back(do_jump(p, ch, t, rng, config.sphere));
                if (ch.label == "gas") rec.gas_collided = true;
                ++j;
            }
            p = advance(p, ts - t, config);
            t = ts;
            rec.snapshots.push_back(snapshot_of(p, ts, config.sphere));
        }
        // Keep the jump log complete over the full run.
        while (j < jumps.size()) {
            p = advance(p, jumps[j].time - t, config);
            t = jumps[j].time;
            const auto& ch = config.channels[jumps[j].channel];
            rec.jumps.push_back(do_jump(p, ch, t, rng, config.sphere));
            if (ch.label == "gas") rec.gas_collided = true;
            ++j;
        }
    } catch (const NumericError& e) {
        throw NumericError("trajectory " + std::to_string(trajectory_index) + ": " + e.what(),
                           e.time);
    }
    return rec;
}

double analytic_grw_spread(double t, double initial_r2, double mass, double lambda) {
    if (!(t >= 0.0) || !(initial_r2 > 0.0) || !(mass > 0.0) || !(lambda >= 0.0))
        throw std::domain_error("analytic_grw_spread: invalid input");
    const double hbar = constants().hbar;
    const double r2 = initial_r2 +
                      9.0 * hbar * hbar * t * t / (4.0 * mass * mass * initial_r2) +
                      lambda * hbar * hbar * t * t * t / (2.0 * mass * mass);
    return std::sqrt(r2);
}

double equilibrium_spread(double mass, double lambda) {
    if (!(mass > 0.0) || !(lambda > 0.0))
        throw std::domain_error("equilibrium_spread: mass and lambda must be positive");
    return std::pow(constants().hbar / (mass * lambda), 0.25);
}

EnsembleResult run_ensemble_full(const ScenarioConfig& config, const EnsembleOptions& options) {
    config.validate();
    const std::size_t n_samples = config.sample_times.size();
    const int n_traj = config.trajectory_count;

    // Map requested velocity collection times onto sample indices.
    std::vector<std::size_t> vel_idx;
    for (double t : options.velocity_sample_times) {
        auto it = std::find_if(config.sample_times.begin(), config.sample_times.end(),
                               [t](double s) { return std::abs(s - t) <= 1e-12 * std::max(1.0, t); });
        if (it == config.sample_times.end())
            throw std::domain_error("run_ensemble_full: velocity time is not a sample time");
        vel_idx.push_back(static_cast<std::size_t>(it - config.sample_times.begin()));
    }

    EnsembleResult result;
    result.velocity_times = options.velocity_sample_times;
    result.velocities.assign(vel_idx.size(), std::vector<Vec3>(n_traj));
    result.dropped.assign(n_traj, 0);

    const int n_blocks = (n_traj + kBlock - 1) / kBlock;
    std::vector<Accumulator> partials(n_blocks, Accumulator(n_samples));

    std::atomic<int> next_block{0};
    std::atomic<bool> failed{false};
    std::string fail_msg;
    double fail_time = 0.0;
    std::mutex fail_mutex;

    auto worker = [&]() {
        while (!failed.load(std::memory_order_relaxed)) {
            const int b = next_block.fetch_add(1);
            if (b >= n_blocks) return;
            const int begin = b * kBlock;
            const int end = std::min(n_traj, begin + kBlock);
            for (int i = begin; i < end; ++i) {
                TrajectoryRecord rec;
                try {
                    rec = run_trajectory(config, i);
                } catch (const NumericError& e) {
                    std::lock_guard<std::mutex> lock(fail_mutex);
                    failed = true;
                    fail_msg = e.what();
                    fail_time = e.time;
                    return;
                }
                const bool drop = config.filter_gas_collisions && rec.gas_collided;
                result.dropped[i] = drop ? 1 : 0;
                partials[b].add(rec, drop);
                for (std::size_t k = 0; k < vel_idx.size(); ++k)
                    result.velocities[k][i] = rec.snapshots[vel_idx[k]].velocity;
            }
        }
    };

    int workers = options.workers;
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, n_blocks));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed) throw NumericError("run_ensemble: " + fail_msg, fail_time);

    Accumulator total(n_samples);
    for (const auto& part : partials) total.fold(part);
    if (total.n == 0) throw std::domain_error("run_ensemble: all trajectories filtered out");

    double lambda_total = 0.0;
    for (const auto& ch : config.channels) lambda_total += ch.lambda();
    const double r2_0 = config.initial_spread * config.initial_spread;
    const double mass = config.sphere.mass();

    EnsembleStats& stats = result.stats;
    stats.samples.resize(n_samples);
    stats.trajectories_used = static_cast<int>(total.n);
    stats.trajectories_dropped = static_cast<int>(total.dropped);
    const double n = static_cast<double>(total.n);
    for (std::size_t k = 0; k < n_samples; ++k) {
        SampleStats& s = stats.samples[k];
        s.time = config.sample_times[k];
        s.mean_individual_variance = total.sum_ind[k] / n;
        const Vec3 mu_mean = total.sum_mu[k] * (1.0 / n);
        s.centre_variance = std::max(0.0, total.sum_mu2[k] / n - mu_mean.norm2());
        const double v = s.mean_individual_variance + s.centre_variance;
        s.total_spread = std::sqrt(v);
        const double w_mean = total.sum_w[k] / n;
        const double w_var = std::max(0.0, total.sum_w2[k] / n - w_mean * w_mean);
        s.standard_error = s.total_spread > 0.0
                               ? std::sqrt(w_var / n) / (2.0 * s.total_spread)
                               : 0.0;
        s.analytic_eq8 = analytic_grw_spread(s.time, r2_0, mass, lambda_total);
    }
    return result;
}

EnsembleStats run_ensemble(const ScenarioConfig& config, int workers) {
    EnsembleOptions opts;
    opts.workers = workers;
    return run_ensemble_full(config, opts).stats;
}

double Histogram::peak_modulus() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < modulus.size(); ++i)
        if (modulus[i] > modulus[best]) best = i;
    const double width = (hi - lo) / static_cast<double>(modulus.size());
    return lo + (static_cast<double>(best) + 0.5) * width;
}

Histogram velocity_histogram(const std::vector<Vec3>& velocities, int bins, double lo, double hi) {
    if (bins < 1 || !(hi > lo)) throw std::domain_error("velocity_histogram: bad binning");
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.modulus.assign(bins, 0);
    for (auto& a : h.axis) a.assign(bins, 0);
    const double width = (hi - lo) / bins;
    auto bin_of = [&](double v) {
        int b = static_cast<int>(std::floor((v - lo) / width));
        return std::clamp(b, 0, bins - 1);
    };
    for (const Vec3& v : velocities) {
        ++h.modulus[bin_of(v.norm())];
        for (int i = 0; i < 3; ++i) ++h.axis[i][bin_of(v[i])];
        ++h.total;
    }
    return h;
}

Histogram velocity_histogram(const EnsembleResult& result, double time, int bins,
                             double lo, double hi) {
    for (std::size_t k = 0; k < result.velocity_times.size(); ++k) {
        if (std::abs(result.velocity_times[k] - time) <= 1e-12 * std::max(1.0, time)) {
            std::vector<Vec3> kept;
            kept.reserve(result.velocities[k].size());
            for (std::size_t i = 0; i < result.velocities[k].size(); ++i)
                if (result.dropped.empty() || !result.dropped[i])
                    kept.push_back(result.velocities[k][i]);
            return velocity_histogram(kept, bins, lo, hi);
        }
    }
    throw std::domain_error("velocity_histogram: velocities were not recorded at this time");
}

} // namespace nanofall
