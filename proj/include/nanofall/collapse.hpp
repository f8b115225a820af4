#pragma once

#include <string>
#include <vector>

#include "nanofall/core_state.hpp"
#include "nanofall/rng.hpp"

namespace nanofall {

/// One localisation mechanism: Poisson rate gamma, inverse squared
/// localisation length alpha.
struct JumpChannel {
    double gamma = 0.0;  // s^-1
    double alpha = 0.0;  // m^-2
    std::string label;

    JumpChannel() = default;
    JumpChannel(double g, double a, std::string lbl);

    double lambda() const { return gamma * alpha; }
    void validate() const;
};

struct JumpEvent {
    double time = 0.0;       // s
    Vec3 location;           // m
    std::string channel;
    double pre_spread = 0.0; // m
    double post_spread = 0.0;
};

struct ScheduledJump {
    double time = 0.0;
    std::size_t channel = 0;
};

/// Independent Poisson arrivals per channel over [0, horizon], merged and
/// sorted by time. Consumes the stream in channel order, then merges.
std::vector<ScheduledJump> sample_jump_times(const std::vector<JumpChannel>& channels,
                                             double horizon, RngStream& rng);

/// Collapse location density marginal: per axis x0 ~ Normal(mu_i, sigma^2)
/// with sigma^2 = 1/(4 Re A) + 1/(2 alpha) (the convolution of the packet
/// density with the squared jump factor).
Vec3 sample_jump_location(const GaussianState& state, double alpha, RngStream& rng);

double jump_location_variance(const GaussianState& state, double alpha);

/// Gaussian-product update: A -> A + alpha/2, B -> B + alpha x0, C
/// renormalized. The new centre is the convex combination of the old centre
/// and x0 with weights 2 Re A and alpha.
GaussianState apply_jump(const GaussianState& state, const Vec3& x0, double alpha);

} // namespace nanofall
