#pragma once

#include <complex>
#include <optional>
#include <string_view>

#include "resonant/constants.hpp"

namespace resonant {

enum class DampingMode { none, radiation };

/// lorentz: alpha0 / (omega0^2 + xi^2). static_limit: frequency independent alpha(0),
/// the approximation under which the retarded energy follows exact power laws.
enum class ResponseMode { lorentz, static_limit };

std::string_view to_string(DampingMode mode);
std::string_view to_string(ResponseMode mode);

/// Single Lorentz oscillator, alpha(omega) = alpha0 / (omega0^2 - omega^2 - i omega gamma).
///
/// alpha0 = f e^2 / m carries units cm^3 (rad/s)^2 so that alpha0 / omega0^2 is the
/// static polarizability in cm^3. alpha_star_0, when set, is the static excess
/// polarizability of the atom relative to the displaced medium; the excess response is
/// the oscillator shape rescaled to that static value.
struct OscillatorPolarizability {
  double alpha0 = 0.0;
  double omega0 = 0.0;
  DampingMode damping = DampingMode::none;
  ResponseMode response = ResponseMode::lorentz;
  std::optional<double> alpha_star_0;

  /// Builds the oscillator from a static polarizability (cm^3) and resonance frequency.
  static OscillatorPolarizability from_static(double alpha_static, double omega0,
                                              ResponseMode response = ResponseMode::lorentz);

  void validate() const;

  double static_polarizability() const { return alpha0 / (omega0 * omega0); }
  double static_excess() const { return alpha_star_0.value_or(static_polarizability()); }
};

/// Vacuum oscillator on the imaginary axis, cm^3. Radiation damping, when enabled,
/// enters as + xi * gamma(xi) in the denominator with gamma evaluated at |xi|.
double alpha_imag_axis(const OscillatorPolarizability& p, double xi);

/// Excess polarizability alpha(i xi)* used by every energy expression.
double excess_alpha_imag_axis(const OscillatorPolarizability& p, double xi);

/// Undamped real-axis response when damping is none; complex otherwise.
std::complex<double> alpha_real_axis(const OscillatorPolarizability& p, double omega);

/// gamma(omega) = (2/3) alpha0 omega^2 / c^3, rad/s.
double radiation_damping_gamma(const OscillatorPolarizability& p, double omega,
                               double medium_c = constants::c0);

/// p^2 = hbar alpha0 / (2 omega0), erg cm^3. With this value the textbook energy p^2 T
/// equals hbar times the first-order frequency shift alpha0 T / (2 omega0).
double transition_dipole_squared(const OscillatorPolarizability& p);

}  // namespace resonant
