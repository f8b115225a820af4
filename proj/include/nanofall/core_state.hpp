#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "nanofall/constants.hpp"

namespace nanofall {

using cplx = std::complex<double>;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }

    double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
};

struct CVec3 {
    cplx x{0.0, 0.0}, y{0.0, 0.0}, z{0.0, 0.0};

    cplx& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    cplx operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    /// Unconjugated dot product B.B (as appears in the C equation of motion).
    cplx dot_self() const { return x * x + y * y + z * z; }
};

/// Rigid homogeneous sphere. Mass and nucleon count are derived from
/// (radius, density) on demand so they stay exact under field changes.
struct NanosphereSpec {
    double radius = 0.0;               // m
    double density = 0.0;              // kg m^-3
    double internal_temperature = 2000.0; // K, conservative trap-heating value

    NanosphereSpec() = default;
    NanosphereSpec(double R, double rho, double T_i = 2000.0);

    double mass() const;          // (4/3) pi R^3 rho
    double nucleon_count() const; // mass / amu
    void validate() const;        // throws std::domain_error
};

struct EnvironmentSpec {
    double gas_temperature = 16.0;        // K
    double gas_pressure = 1e-13;          // Pa; a few hundred molecules per cm^3
    double gas_molecule_mass = 28.97 * 1.66053906660e-27; // kg, mean air molecule
    double environment_temperature = 16.0; // K, radiation background

    void validate() const;
};

/// Complex Gaussian centre-of-mass wavefunction
///   psi(x) = exp(-A r^2 + B.x + C),  r^2 = |x|^2.
///
/// Spread convention used everywhere in this library: the full 3-D second
/// moment about the packet's own centre,
///   spread^2 = <|x - mu|^2> = 3 / (4 Re A),
/// with per-axis centre mu_i = Re(B_i) / (2 Re A) and mean momentum
/// <p> = hbar Im(B - 2 A mu).
struct GaussianState {
    cplx A{0.0, 0.0};   // m^-2, Re A > 0
    CVec3 B;            // m^-1
    cplx C{0.0, 0.0};   // dimensionless
    bool valid_norm = false;

    void check() const; // throws std::domain_error unless Re A > 0
};

/// Constructs the normalized Gaussian with the requested observables.
GaussianState make_gaussian(double spread, const Vec3& centre, const Vec3& velocity,
                            const NanosphereSpec& sphere);

double spread(const GaussianState& s);
double spread2(const GaussianState& s);
Vec3 centre(const GaussianState& s);
Vec3 mean_velocity(const GaussianState& s, const NanosphereSpec& sphere);

/// Returns a copy with Re C solved from (A, B) so that the norm is 1.
GaussianState normalized(const GaussianState& s);

/// Norm integral of exp(-A r^2 + B.x + C) over R^3 (squared modulus).
double norm_squared(const GaussianState& s);

} // namespace nanofall
