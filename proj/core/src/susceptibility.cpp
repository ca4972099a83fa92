#include "resonant/susceptibility.hpp"

#include <cmath>

#include "resonant/constants.hpp"
#include "resonant/errors.hpp"

namespace resonant {

namespace {

void require_separation(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw DomainError("separation rho must be a finite value > 0");
  }
}

}  // namespace

ComplexSusceptibility t_real_axis_uniform(double rho, double omega, double eps) {
  require_separation(rho);
  if (!(omega >= 0.0)) throw DomainError("real frequency omega must be >= 0");
  if (!(eps >= 1.0)) throw DomainError("dielectric constant must be >= 1");

  using namespace std::complex_literals;
  const double k = omega * std::sqrt(eps) / constants::c0;
  const std::complex<double> phase = std::exp(1i * (k * rho)) / (rho * eps);
  const double inv_rho2 = 1.0 / (rho * rho);

  ComplexSusceptibility t;
  t.t_perp = (k * k + 1i * (k / rho) - inv_rho2) * phase;
  t.t_par = 2.0 * (inv_rho2 - 1i * (k / rho)) * phase;
  t.rho = rho;
  t.frequency = omega;
  t.tag = FrequencyTag::real_axis;
  t.medium_eps = eps;
  return t;
}

ComplexSusceptibility t_real_axis_free_space(double rho, double omega) {
  return t_real_axis_uniform(rho, omega, 1.0);
}

Susceptibility t_imag_axis_medium(double rho, double xi, const MediumModel& medium) {
  require_separation(rho);
  if (!(xi > 0.0)) throw DomainError("imaginary frequency xi must be > 0");
  const double eps = eval_epsilon(medium, xi);
  const double q = xi * std::sqrt(eps) / constants::c0;  // xi / c in the medium

  Susceptibility t;
  t.rho = rho;
  t.frequency = xi;
  t.tag = FrequencyTag::imaginary_axis;
  t.medium_eps = eps;
  if (q * rho > constants::max_exponent) {
    t.underflow = true;
    return t;
  }
  const double decay = std::exp(-q * rho) / (rho * eps);
  const double inv_rho2 = 1.0 / (rho * rho);
  t.t_perp = (q * q + q / rho + inv_rho2) * decay;
  t.t_par = -2.0 * (q / rho + inv_rho2) * decay;
  return t;
}

Susceptibility t_static_electrolyte(double rho, double kappa, double eps_static) {
  require_separation(rho);
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw DomainError("kappa must be >= 0");
  if (!(eps_static >= 1.0)) throw DomainError("eps_static must be >= 1");

  Susceptibility t;
  t.rho = rho;
  t.frequency = 0.0;
  t.tag = FrequencyTag::static_screened;
  t.medium_eps = eps_static;
  if (kappa * rho > constants::max_exponent) {
    t.underflow = true;
    return t;
  }
  const double decay = std::exp(-kappa * rho) / (rho * eps_static);
  const double inv_rho2 = 1.0 / (rho * rho);
  t.t_perp = (kappa / rho + inv_rho2) * decay;
  t.t_par = -2.0 * (0.5 * kappa * kappa + kappa / rho + inv_rho2) * decay;
  return t;
}

}  // namespace resonant
