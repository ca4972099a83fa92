#pragma once

// Physical constants in Gaussian (CGS) units. CODATA 2018 exact/recommended values.

#include <numbers>

namespace resonant::constants {

inline constexpr double pi = std::numbers::pi;

inline constexpr double hbar = 1.054571817e-27;          // erg s
inline constexpr double k_boltzmann = 1.380649e-16;      // erg / K
inline constexpr double c0 = 2.99792458e10;              // cm / s
inline constexpr double e_charge = 4.803204712570263e-10;  // statC
inline constexpr double erg_per_ev = 1.602176634e-12;
inline constexpr double avogadro = 6.02214076e23;        // 1 / mol
inline constexpr double amu_g = 1.66053906660e-24;       // g
inline constexpr double cm_per_nm = 1.0e-7;

// Underflow guard: exp(-x) is reported as zero beyond this argument.
inline constexpr double max_exponent = 700.0;

/// Per-species number density (cm^-3) of a 1:1 salt at the given molarity (mol/L).
constexpr double molar_to_per_cm3(double molar) { return molar * avogadro / 1000.0; }

constexpr double ev_to_rad_per_s(double ev) { return ev * erg_per_ev / hbar; }

}  // namespace resonant::constants
