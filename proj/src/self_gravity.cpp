#include "nanofall/self_gravity.hpp"

#include <cmath>
#include <stdexcept>

#include "nanofall/dynamics.hpp"

namespace nanofall {

namespace {

// Quintic profile of the sphere-sphere self-interaction, in units of G M^2 / R.
double veff_poly(double u) { // u = d / R, valid for u <= 2
    return -1.2 + 0.5 * u * u - 0.1875 * u * u * u + (1.0 / 160.0) * u * u * u * u * u;
}

// Spring profile in units of G M^2 / R^3, u = sqrt(<r^2>) / R, valid u <= 2.
double spring_poly(double u) { return 1.0 - 0.5625 * u + 0.03125 * u * u * u; }

GravityRegime classify(double spread, double radius) {
    const double cross = 2.0 * radius;
    if (spread >= cross) return GravityRegime::single_particle;
    if (spread <= 0.2 * cross) return GravityRegime::macroscopic;
    return GravityRegime::mesoscopic;
}

} // namespace

SpringModel::SpringModel(const NanosphereSpec& s, double amp) : sphere(s), amplification(amp) {
    sphere.validate();
    if (!(amplification >= 1.0))
        throw std::domain_error("SpringModel: amplification must be >= 1");
}

double v_eff(double d, const NanosphereSpec& sphere) {
    if (!(d >= 0.0)) throw std::domain_error("v_eff: separation must be non-negative");
    const auto& k = constants();
    const double R = sphere.radius;
    const double M = sphere.mass();
    const double scale = k.G * M * M / R;
    const double u = d / R;
    if (u <= 2.0) return scale * veff_poly(u);
    return -k.G * M * M / d;
}

double spring_k(double r2, const SpringModel& model) {
    if (!(r2 >= 0.0)) throw std::domain_error("spring_k: <r^2> must be non-negative");
    const auto& k = constants();
    const double R = model.sphere.radius;
    const double M = model.sphere.mass();
    const double d = std::sqrt(r2);
    if (d <= 2.0 * R)
        return model.amplification * (k.G * M * M / (R * R * R)) * spring_poly(d / R);
    return k.G * M * M / (r2 * d);
}

double v_cons(double r2, const SpringModel& model) {
    if (!(r2 >= 0.0)) throw std::domain_error("v_cons: <r^2> must be non-negative");
    const double d = std::sqrt(r2);
    const double inner = v_eff(d, model.sphere);
    if (model.amplification == 1.0 || d >= model.crossover()) return inner;
    // Amplified short-distance branch: integrate amp * k / 2 inward from the
    // crossover, where the value matches the plain potential.
    const double at_cross = v_eff(model.crossover(), model.sphere);
    return at_cross + model.amplification * (inner - at_cross);
}

double conserved_energy(const GaussianState& state, const SpringModel& model) {
    state.check();
    const auto& k = constants();
    const double M = model.sphere.mass();
    const double a_r = state.A.real();
    const double kinetic = 1.5 * k.hbar * k.hbar / M * std::norm(state.A) / a_r;
    return kinetic + v_cons(3.0 / (4.0 * a_r), model);
}

BoundState bound_state(const SpringModel& model) {
    const auto& k = constants();
    const double R = model.sphere.radius;
    const double M = model.sphere.mass();
    // Scaled units: A~ = A R^2, spring in units of hbar^2 / (M R^4).
    const double g = k.G * M * M * M * R / (k.hbar * k.hbar);
    auto spring_scaled = [&](double a) {
        const double r2 = 0.75 / a;
        const double d = std::sqrt(r2);
        if (d <= 2.0) return model.amplification * g * spring_poly(d);
        return g / (r2 * d);
    };
    auto residual = [&](double ln_a) {
        const double a = std::exp(ln_a);
        return a - 0.5 * std::sqrt(spring_scaled(a));
    };
    // k is monotone in <r^2> on each branch, so the fixed-point residual is
    // negative at small A and positive above sqrt(g * amp)/2: bracket and bisect.
    double lo = std::log(std::sqrt(g * model.amplification) / 2.0) - 120.0;
    double hi = std::log(std::sqrt(g * model.amplification) / 2.0) + 30.0;
    if (!(residual(lo) < 0.0) || !(residual(hi) > 0.0))
        throw NumericError("bound_state: bracketing failed", 0.0);
    for (int i = 0; i < 260; ++i) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) < 0.0 ? lo : hi) = mid;
    }
    const double a_scaled = std::exp(0.5 * (lo + hi));
    if (std::abs(residual(0.5 * (lo + hi))) > 1e-10 * a_scaled)
        throw NumericError("bound_state: no convergence", 0.0);

    BoundState bs;
    bs.A_static = a_scaled / (R * R);
    bs.spread = std::sqrt(3.0 / (4.0 * bs.A_static));
    bs.regime = classify(bs.spread, R);
    GaussianState st;
    st.A = cplx(bs.A_static, 0.0);
    bs.energy = conserved_energy(normalized(st), model);
    return bs;
}

CriticalLambda critical_lambda(const SpringModel& model) {
    const auto& k = constants();
    const BoundState bs = bound_state(model);
    const double M = model.sphere.mass();
    const double R = model.sphere.radius;
    CriticalLambda out;
    out.exact = spring_k(bs.spread * bs.spread, model) / (2.0 * k.hbar);
    // Log-space evaluation: M^11 underflows double range for small spheres.
    out.single_particle_estimate =
        std::exp(4.0 * std::log(k.G) + 11.0 * std::log(M) - 7.0 * std::log(k.hbar));
    out.macroscopic_estimate = k.G * M * M / (R * R * R * k.hbar);
    out.regime = bs.regime;
    out.table_estimate = (bs.regime == GravityRegime::single_particle)
                             ? out.single_particle_estimate
                             : out.macroscopic_estimate;
    return out;
}

double structural_amplification(const NanosphereSpec& sphere, const NucleusSpec& nucleus) {
    if (!(nucleus.mass > 0.0) || !(nucleus.radius > 0.0))
        throw std::domain_error("NucleusSpec: mass and radius must be positive");
    const double r3 = nucleus.radius * nucleus.radius * nucleus.radius;
    const double big_r3 = sphere.radius * sphere.radius * sphere.radius;
    return (nucleus.mass / r3) / (sphere.mass() / big_r3);
}

MetastablePair metastable_pair(const NanosphereSpec& sphere, const NucleusSpec& nucleus) {
    const double amp = std::max(1.0, structural_amplification(sphere, nucleus));
    MetastablePair pair;
    pair.inner = bound_state(SpringModel(sphere, amp));
    pair.outer = bound_state(SpringModel(sphere, 1.0));
    pair.distinct = std::abs(pair.inner.spread - pair.outer.spread) > 1e-9 * pair.outer.spread;
    return pair;
}

double velocity_ratio(const NanosphereSpec& sphere, double temperature, const BoundState& bound) {
    if (!(temperature >= 0.0)) throw std::domain_error("velocity_ratio: negative temperature");
    const auto& k = constants();
    const double M = sphere.mass();
    const double v_thermal = std::sqrt(2.0 * k.k_B * temperature / M);
    const double v_quant = k.h() / (M * bound.spread);
    return v_thermal / v_quant;
}

} // namespace nanofall
