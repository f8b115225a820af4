#include "nanofall/core_state.hpp"

#include <numbers>
#include <stdexcept>

namespace nanofall {

const PhysicalConstants& constants() {
    static const PhysicalConstants k{};
    return k;
}

NanosphereSpec::NanosphereSpec(double R, double rho, double T_i)
    : radius(R), density(rho), internal_temperature(T_i) {
    validate();
}

double NanosphereSpec::mass() const {
    return (4.0 / 3.0) * std::numbers::pi * radius * radius * radius * density;
}

double NanosphereSpec::nucleon_count() const { return mass() / constants().amu; }

void NanosphereSpec::validate() const {
    if (!(radius > 0.0)) throw std::domain_error("NanosphereSpec: radius must be positive");
    if (!(density > 0.0)) throw std::domain_error("NanosphereSpec: density must be positive");
    if (!(internal_temperature >= 0.0))
        throw std::domain_error("NanosphereSpec: internal_temperature must be non-negative");
    if (nucleon_count() < 1.0)
        throw std::domain_error("NanosphereSpec: sphere lighter than one nucleon");
}

void EnvironmentSpec::validate() const {
    if (gas_temperature < 0.0 || gas_pressure < 0.0 || gas_molecule_mass <= 0.0 ||
        environment_temperature < 0.0)
        throw std::domain_error("EnvironmentSpec: negative field");
    if (gas_pressure > 0.0 && gas_temperature <= 0.0)
        throw std::domain_error("EnvironmentSpec: gas_temperature must be positive at finite pressure");
}

void GaussianState::check() const {
    if (!(A.real() > 0.0))
        throw std::domain_error("GaussianState: Re(A) must be positive (normalizability)");
}

GaussianState make_gaussian(double spread_in, const Vec3& centre_in, const Vec3& velocity_in,
                            const NanosphereSpec& sphere) {
    if (!(spread_in > 0.0)) throw std::domain_error("make_gaussian: spread must be positive");
    const double a = 3.0 / (4.0 * spread_in * spread_in);
    GaussianState s;
    s.A = cplx(a, 0.0);
    const double bv = sphere.mass() / constants().hbar;
    for (int i = 0; i < 3; ++i)
        s.B[i] = cplx(2.0 * a * centre_in[i], bv * velocity_in[i]);
    s.check();
    return normalized(s);
}

double spread2(const GaussianState& s) {
    s.check();
    return 3.0 / (4.0 * s.A.real());
}

double spread(const GaussianState& s) { return std::sqrt(spread2(s)); }

Vec3 centre(const GaussianState& s) {
    s.check();
    Vec3 mu;
    for (int i = 0; i < 3; ++i) mu[i] = s.B[i].real() / (2.0 * s.A.real());
    return mu;
}

Vec3 mean_velocity(const GaussianState& s, const NanosphereSpec& sphere) {
    const Vec3 mu = centre(s);
    const double scale = constants().hbar / sphere.mass();
    Vec3 v;
    for (int i = 0; i < 3; ++i)
        v[i] = scale * (s.B[i].imag() - 2.0 * s.A.imag() * mu[i]);
    return v;
}

GaussianState normalized(const GaussianState& s) {
    s.check();
    const double a = s.A.real();
    double br2 = 0.0;
    for (int i = 0; i < 3; ++i) br2 += s.B[i].real() * s.B[i].real();
    GaussianState out = s;
    const double re_c = -0.75 * std::log(std::numbers::pi / (2.0 * a)) - br2 / (4.0 * a);
    out.C = cplx(re_c, s.C.imag());
    out.valid_norm = true;
    return out;
}

double norm_squared(const GaussianState& s) {
    s.check();
    const double a = s.A.real();
    double br2 = 0.0;
    for (int i = 0; i < 3; ++i) br2 += s.B[i].real() * s.B[i].real();
    const double expo = br2 / (2.0 * a) + 2.0 * s.C.real();
    return std::pow(std::numbers::pi / (2.0 * a), 1.5) * std::exp(expo);
}

} // namespace nanofall
