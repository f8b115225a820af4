#pragma once

#include <numbers>

namespace nanofall {

// CODATA 2018 values, SI units throughout.
struct PhysicalConstants {
    double hbar       = 1.054571817e-34;   // J s
    double G          = 6.67430e-11;       // m^3 kg^-1 s^-2
    double k_B        = 1.380649e-23;      // J K^-1
    double c          = 299792458.0;       // m s^-1
    double amu        = 1.66053906660e-27; // kg
    double m_electron = 9.1093837015e-31;  // kg
    double m_planck   = 2.176434e-8;       // kg
    double hamaker_A  = 1e-19;             // J, generic dielectric sphere pair

    double h() const { return 2.0 * std::numbers::pi * hbar; }

    bool valid() const {
        return hbar > 0 && G > 0 && k_B > 0 && c > 0 && amu > 0 &&
               m_electron > 0 && m_planck > 0 && hamaker_A > 0;
    }
};

/// Build-time constant set shared by the whole library.
const PhysicalConstants& constants();

} // namespace nanofall
