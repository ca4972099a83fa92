#pragma once

// Diagonal field-susceptibility tensor between two dipoles on the z axis.
//
// Two element sets with different sign conventions are kept apart on purpose:
//   * real axis, free space:  T_zz(omega -> 0) = +2/rho^3, T_xx = -1/rho^3
//   * imaginary axis / static electrolyte: T_xx(xi -> 0) = +1/rho^3, T_zz = -2/rho^3
// Both traces vanish in the unscreened zero-frequency limit.

#include <complex>

#include "resonant/media.hpp"

namespace resonant {

enum class FrequencyTag { real_axis, imaginary_axis, static_screened };

template <class Value>
struct SusceptibilityDiagonal {
  Value t_perp{};  // T_xx = T_yy, cm^-3
  Value t_par{};   // T_zz, cm^-3
  double rho = 0.0;
  double frequency = 0.0;  // omega, xi, or 0 for the static set
  FrequencyTag tag = FrequencyTag::imaginary_axis;
  double medium_eps = 1.0;
  bool underflow = false;  // exponential factor below double range; elements set to 0

  Value trace() const { return 2.0 * t_perp + t_par; }
};

using ComplexSusceptibility = SusceptibilityDiagonal<std::complex<double>>;
using Susceptibility = SusceptibilityDiagonal<double>;

/// Retarded free-space elements on the real frequency axis.
ComplexSusceptibility t_real_axis_free_space(double rho, double omega);

/// Same form inside a non-dispersive dielectric: c -> c0/sqrt(eps) and an overall 1/eps.
ComplexSusceptibility t_real_axis_uniform(double rho, double omega, double eps);

/// Elements at imaginary frequency xi > 0 inside the medium, c = c0 / sqrt(eps(i xi)).
Susceptibility t_imag_axis_medium(double rho, double xi, const MediumModel& medium);

/// Debye-screened zero-frequency elements of an electrolyte.
Susceptibility t_static_electrolyte(double rho, double kappa, double eps_static);

}  // namespace resonant
