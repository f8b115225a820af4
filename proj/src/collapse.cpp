#include "nanofall/collapse.hpp"

#include <algorithm>
#include <stdexcept>

namespace nanofall {

JumpChannel::JumpChannel(double g, double a, std::string lbl)
    : gamma(g), alpha(a), label(std::move(lbl)) {
    validate();
}

void JumpChannel::validate() const {
    if (!(gamma >= 0.0)) throw std::domain_error("JumpChannel: gamma must be non-negative");
    if (!(alpha > 0.0)) throw std::domain_error("JumpChannel: alpha must be positive");
}

std::vector<ScheduledJump> sample_jump_times(const std::vector<JumpChannel>& channels,
                                             double horizon, RngStream& rng) {
    if (!(horizon >= 0.0)) throw std::domain_error("sample_jump_times: negative horizon");
    std::vector<ScheduledJump> jumps;
    for (std::size_t c = 0; c < channels.size(); ++c) {
        channels[c].validate();
        if (channels[c].gamma == 0.0) continue;
        double t = 0.0;
        while (true) {
            t += rng.exponential(channels[c].gamma);
            if (t > horizon) break;
            jumps.push_back({t, c});
        }
    }
    std::stable_sort(jumps.begin(), jumps.end(),
                     [](const ScheduledJump& a, const ScheduledJump& b) { return a.time < b.time; });
    return jumps;
}

double jump_location_variance(const GaussianState& state, double alpha) {
    state.check();
    if (!(alpha > 0.0)) throw std::domain_error("jump_location_variance: alpha must be positive");
    return 1.0 / (4.0 * state.A.real()) + 1.0 / (2.0 * alpha);
}

Vec3 sample_jump_location(const GaussianState& state, double alpha, RngStream& rng) {
    const Vec3 mu = centre(state);
    const double sigma = std::sqrt(jump_location_variance(state, alpha));
    Vec3 x0;
    for (int i = 0; i < 3; ++i) x0[i] = mu[i] + sigma * rng.normal();
    return x0;
}

GaussianState apply_jump(const GaussianState& state, const Vec3& x0, double alpha) {
    state.check();
    if (!(alpha > 0.0)) throw std::domain_error("apply_jump: alpha must be positive");
    GaussianState out = state;
    out.A = state.A + 0.5 * alpha;
    for (int i = 0; i < 3; ++i) out.B[i] = state.B[i] + alpha * x0[i];
    return normalized(out);
}

} // namespace nanofall
