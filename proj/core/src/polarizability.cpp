#include "resonant/polarizability.hpp"

#include <cmath>

#include "resonant/errors.hpp"

namespace resonant {

std::string_view to_string(DampingMode mode) {
  return mode == DampingMode::none ? "none" : "radiation";
}

std::string_view to_string(ResponseMode mode) {
  return mode == ResponseMode::lorentz ? "lorentz" : "static";
}

OscillatorPolarizability OscillatorPolarizability::from_static(double alpha_static,
                                                               double omega0,
                                                               ResponseMode response) {
  OscillatorPolarizability p;
  p.alpha0 = alpha_static * omega0 * omega0;
  p.omega0 = omega0;
  p.response = response;
  p.validate();
  return p;
}

void OscillatorPolarizability::validate() const {
  if (!(alpha0 > 0.0) || !std::isfinite(alpha0)) throw DomainError("alpha0 must be > 0");
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw DomainError("omega0 must be > 0");
  if (alpha_star_0 && (!(*alpha_star_0 >= 0.0) || !std::isfinite(*alpha_star_0))) {
    throw DomainError("static excess polarizability must be >= 0");
  }
}

double alpha_imag_axis(const OscillatorPolarizability& p, double xi) {
  if (p.response == ResponseMode::static_limit) return p.static_polarizability();
  const double w0sq = p.omega0 * p.omega0;
  double denom = w0sq + xi * xi;
  if (p.damping == DampingMode::radiation) {
    const double ax = std::abs(xi);
    denom += ax * radiation_damping_gamma(p, ax);
  }
  return p.alpha0 / denom;
}

double excess_alpha_imag_axis(const OscillatorPolarizability& p, double xi) {
  const double alpha = alpha_imag_axis(p, xi);
  if (!p.alpha_star_0) return alpha;
  return alpha * (*p.alpha_star_0 / p.static_polarizability());
}

std::complex<double> alpha_real_axis(const OscillatorPolarizability& p, double omega) {
  const double w0sq = p.omega0 * p.omega0;
  if (p.response == ResponseMode::static_limit) return p.static_polarizability();
  const double gamma =
      p.damping == DampingMode::radiation ? radiation_damping_gamma(p, omega) : 0.0;
  return p.alpha0 / std::complex<double>(w0sq - omega * omega, -omega * gamma);
}

double radiation_damping_gamma(const OscillatorPolarizability& p, double omega,
                               double medium_c) {
  return (2.0 / 3.0) * p.alpha0 * omega * omega / (medium_c * medium_c * medium_c);
}

double transition_dipole_squared(const OscillatorPolarizability& p) {
  return constants::hbar * p.alpha0 / (2.0 * p.omega0);
}

}  // namespace resonant
