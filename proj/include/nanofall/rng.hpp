#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace nanofall {

/// Counter-based stream RNG (splitmix64 core). Each trajectory owns a private
/// stream derived from (master_seed, stream_id), so ensembles are reproducible
/// independent of scheduling and worker count.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id) {
        state_ = mix(mix(master_seed ^ 0x6a09e667f3bcc909ULL) ^
                     mix(stream_id * 0x9e3779b97f4a7c15ULL + 0xbb67ae8584caa73bULL));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (second value cached).
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1 = 1.0 - uniform(); // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double th = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(th);
        has_cached_ = true;
        return r * std::cos(th);
    }

    /// Exponential with given rate (> 0).
    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_ = 0;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace nanofall
