#include "resonant/resonance.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "resonant/constants.hpp"
#include "resonant/errors.hpp"
#include "resonant/susceptibility.hpp"

namespace resonant {

namespace {

void require_separation(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw DomainError("separation rho must be a finite value > 0");
  }
}

double branch_sign(Branch branch) { return branch == Branch::antisymmetric ? 1.0 : -1.0; }

// 2 ln(1 + s a t_perp) + ln(1 + s a t_par); first order s a (2 t_perp + t_par).
double tensor_kernel(double alpha, const Susceptibility& t, Order order, double sign) {
  if (order == Order::first) return sign * alpha * t.trace();
  const double x_perp = sign * alpha * t.t_perp;
  const double x_par = sign * alpha * t.t_par;
  if (!(x_perp > -1.0) || !(x_par > -1.0)) {
    std::ostringstream msg;
    msg << "coupling too strong for the logarithmic form at rho = " << t.rho
        << " cm (alpha T = " << x_perp << ", " << x_par << ")";
    throw StrongCouplingError(msg.str());
  }
  return 2.0 * std::log1p(x_perp) + std::log1p(x_par);
}

double real_axis_eps(const MediumModel& medium) {
  switch (medium.kind()) {
    case MediumKind::vacuum: return 1.0;
    case MediumKind::constant_dielectric: return medium.eps_background();
    default:
      throw UsageError("mode solver needs a real-axis response; only vacuum and "
                       "constant_dielectric media are supported, got " +
                       std::string(to_string(medium.kind())));
  }
}

double real_axis_element(double rho, double omega, double eps, Axis axis) {
  const ComplexSusceptibility t = t_real_axis_uniform(rho, omega, eps);
  return axis == Axis::perp ? t.t_perp.real() : t.t_par.real();
}

// Root of omega^2 - omega0^2 - sign alpha0 Re T(rho, omega) = 0 near omega0.
double solve_root(double rho, const OscillatorPolarizability& p, double eps, Axis axis,
                  double sign) {
  const double w0 = p.omega0;
  const double w0sq = w0 * w0;
  auto f = [&](double w) {
    return (w - w0) * (w + w0) - sign * p.alpha0 * real_axis_element(rho, w, eps, axis);
  };

  const double coupling = p.alpha0 * std::abs(real_axis_element(rho, w0, eps, axis)) / w0sq;
  if (coupling >= 1.0) {
    std::ostringstream msg;
    msg << "strong coupling alpha0 |T| / omega0^2 = " << coupling << " at rho = " << rho
        << " cm; no real root bracketed near omega0";
    throw StrongCouplingError(msg.str());
  }
  const double guess = w0 * std::sqrt(1.0 + sign * p.alpha0 *
                                                real_axis_element(rho, w0, eps, axis) / w0sq);
  if (f(guess) == 0.0) return guess;

  double width = std::max(std::abs(guess - w0), 64.0 * std::numeric_limits<double>::epsilon() * w0);
  double lo = guess - width;
  double hi = guess + width;
  double f_lo = f(lo);
  double f_hi = f(hi);
  for (int expand = 0; f_lo * f_hi > 0.0; ++expand) {
    if (expand > 60) {
      throw StrongCouplingError("no sign change bracketing the resonance near omega0");
    }
    width *= 2.0;
    lo = std::max(guess - width, 0.5 * guess * std::numeric_limits<double>::epsilon());
    hi = guess + width;
    f_lo = f(lo);
    f_hi = f(hi);
  }
  // Bisection to adjacent doubles.
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(f_lo) <= std::abs(f(hi)) ? lo : hi;
}

struct MediumIntegral {
  QuadratureResult q;
  bool truncated = false;
};

// Tabulated media are integrated only over the sampled range (in ln xi); the neglected
// ends are bounded from the edge values and folded into the error estimate.
MediumIntegral integrate_over_medium(const Integrand& f, double rho, const MediumModel& medium,
                                     const QuadratureSpec& spec) {
  MediumIntegral out;
  if (medium.kind() != MediumKind::tabulated) {
    out.q = integrate_semi_infinite(f, spec, decay_frequency(rho, medium));
    return out;
  }
  const double lo = medium.table().front().xi;
  const double hi = medium.table().back().xi;
  auto g = [&](double s) {
    const double xi = std::exp(s);
    return f(xi) * xi;
  };
  out.q = integrate_interval(g, std::log(lo), std::log(hi), spec);
  const double low_tail = std::abs(f(lo)) * lo / 3.0;
  const double high_tail =
      std::abs(f(hi)) * constants::c0 / (rho * std::sqrt(medium.table().back().eps));
  out.q.error += low_tail + high_tail;
  out.truncated = low_tail + high_tail > std::max(spec.rel_tol * std::abs(out.q.value), spec.abs_floor);
  return out;
}

}  // namespace

std::string_view to_string(Axis axis) { return axis == Axis::perp ? "perp" : "par"; }

std::string_view to_string(Branch branch) {
  return branch == Branch::antisymmetric ? "antisymmetric" : "symmetric";
}

std::string_view to_string(Order order) { return order == Order::first ? "first" : "full_log"; }

std::string_view to_string(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::unlabeled: return "unlabeled";
    case RegimeLabel::screened_classical: return "screened-classical";
    case RegimeLabel::crossover: return "crossover";
    case RegimeLabel::rho4: return "rho4";
    case RegimeLabel::rho7: return "rho7";
    case RegimeLabel::qed_comparison: return "qed-comparison";
  }
  return "unlabeled";
}

RegimeLabel regime_label_from_string(std::string_view text) {
  for (auto label : {RegimeLabel::unlabeled, RegimeLabel::screened_classical,
                     RegimeLabel::crossover, RegimeLabel::rho4, RegimeLabel::rho7,
                     RegimeLabel::qed_comparison}) {
    if (to_string(label) == text) return label;
  }
  throw UsageError("unknown regime label '" + std::string(text) + "'");
}

void EnergyCurve::validate() const {
  if (energy.size() != rho.size() || labels.size() != rho.size() || flags.size() != rho.size()) {
    throw UsageError("energy curve columns have different lengths");
  }
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0.0) || !std::isfinite(rho[i])) throw UsageError("rho grid must be > 0");
    if (i > 0 && !(rho[i] > rho[i - 1])) {
      throw UsageError("rho grid must be strictly increasing");
    }
    if (!std::isfinite(energy[i])) throw UsageError("energy values must be finite");
  }
}

ModePair resonance_modes(double rho, const OscillatorPolarizability& p,
                         const MediumModel& medium, Axis axis) {
  require_separation(rho);
  p.validate();
  const double eps = real_axis_eps(medium);
  const double c = constants::c0 / std::sqrt(eps);
  ModePair m;
  m.rho = rho;
  m.axis = axis;
  m.omega_plus = solve_root(rho, p, eps, axis, -1.0);
  m.omega_minus = solve_root(rho, p, eps, axis, +1.0);
  m.width_plus = radiation_damping_gamma(p, m.omega_plus, c);
  m.width_minus = radiation_damping_gamma(p, m.omega_minus, c);
  return m;
}

ResonanceModes resonance_modes(double rho, const OscillatorPolarizability& p,
                               const MediumModel& medium) {
  return {resonance_modes(rho, p, medium, Axis::perp), resonance_modes(rho, p, medium, Axis::par)};
}

ResonanceModes uncoupled_modes(const OscillatorPolarizability& p) {
  p.validate();
  const double width = radiation_damping_gamma(p, p.omega0);
  ModePair m;
  m.omega_plus = p.omega0;
  m.omega_minus = p.omega0;
  m.rho = std::numeric_limits<double>::infinity();
  m.width_plus = width;
  m.width_minus = width;
  ModePair par = m;
  par.axis = Axis::par;
  return {m, par};
}

double first_order_shift(double rho, const OscillatorPolarizability& p,
                         const MediumModel& medium, Axis axis) {
  require_separation(rho);
  const double eps = real_axis_eps(medium);
  return p.alpha0 * real_axis_element(rho, p.omega0, eps, axis) / (2.0 * p.omega0);
}

double energy_from_shift(const ModePair& at_rho, const ModePair& at_inf, Branch branch) {
  if (branch == Branch::antisymmetric) {
    return constants::hbar * (at_rho.omega_minus - at_inf.omega_minus);
  }
  return constants::hbar * (at_rho.omega_plus - at_inf.omega_plus);
}

double energy_from_shift(const ResonanceModes& at_rho, const ResonanceModes& at_inf,
                         Branch branch) {
  return (2.0 * energy_from_shift(at_rho.perp, at_inf.perp, branch) +
          energy_from_shift(at_rho.par, at_inf.par, branch)) /
         3.0;
}

std::complex<double> textbook_energy(double rho, const OscillatorPolarizability& p, Axis axis) {
  p.validate();
  const ComplexSusceptibility t = t_real_axis_free_space(rho, p.omega0);
  return transition_dipole_squared(p) * (axis == Axis::perp ? t.t_perp : t.t_par);
}

RateShapeTerms qed_transfer_rate_terms(double rho, double omega_j) {
  require_separation(rho);
  if (!(omega_j > 0.0)) throw DomainError("omega_j must be > 0");
  const double k = omega_j / constants::c0;
  const double r2 = rho * rho;
  return {3.0 / (r2 * r2 * r2), k * k / (r2 * r2), k * k * k * k / r2};
}

double qed_transfer_rate_shape(double rho, double omega_j) {
  return qed_transfer_rate_terms(rho, omega_j).total();
}

double classical_screened_energy(double rho, double alpha_star_0,
                                 const ElectrolyteParams& params) {
  require_separation(rho);
  const double kappa = debye_kappa(params);
  if (kappa * rho > constants::max_exponent) return 0.0;
  const double kT = constants::k_boltzmann * params.temperature;
  return -kT * alpha_star_0 * kappa * kappa * std::exp(-kappa * rho) / (rho * params.eps_static);
}

double decay_frequency(double rho, const MediumModel& medium) {
  require_separation(rho);
  const double upper = constants::c0 / (rho * std::sqrt(medium.eps_background()));
  if (medium.kind() != MediumKind::davies_ninham) return upper;

  // xi sqrt(eps(i xi)) is increasing; solve xi rho sqrt(eps) / c0 = 1 in log xi.
  auto excess = [&](double xi) {
    return xi * rho * std::sqrt(eval_epsilon(medium, xi)) / constants::c0 - 1.0;
  };
  double hi = upper;
  double lo = upper;
  while (excess(lo) > 0.0) lo *= 0.01;
  for (int iter = 0; iter < 100 && hi / lo > 1.0 + 1e-12; ++iter) {
    const double mid = std::sqrt(lo * hi);
    (excess(mid) > 0.0 ? hi : lo) = mid;
  }
  return std::sqrt(lo * hi);
}

EnergyEstimate retarded_zero_T_energy(double rho, const OscillatorPolarizability& p,
                                      const MediumModel& medium, const QuadratureSpec& spec) {
  require_separation(rho);
  p.validate();
  const double floor_exponent = rho * std::sqrt(medium.eps_background()) / constants::c0;
  auto integrand = [&](double xi) {
    if (xi * floor_exponent > constants::max_exponent) return 0.0;
    const double exponent = xi * rho * std::sqrt(eval_epsilon(medium, xi)) / constants::c0;
    if (exponent > constants::max_exponent) return 0.0;
    return xi * xi * excess_alpha_imag_axis(p, xi) * std::exp(-exponent);
  };
  const MediumIntegral m = integrate_over_medium(integrand, rho, medium, spec);
  const double prefactor = -constants::hbar / (rho * constants::pi * constants::c0 * constants::c0);
  return {prefactor * m.q.value, std::abs(prefactor) * m.q.error, m.truncated};
}

EnergyEstimate zero_T_energy(double rho, const OscillatorPolarizability& p,
                             const MediumModel& medium, const QuadratureSpec& spec, Order order,
                             Branch branch) {
  require_separation(rho);
  p.validate();
  const double sign = branch_sign(branch);
  const double floor_exponent = rho * std::sqrt(medium.eps_background()) / constants::c0;
  auto integrand = [&](double xi) {
    if (xi * floor_exponent > constants::max_exponent) return 0.0;
    const Susceptibility t = t_imag_axis_medium(rho, xi, medium);
    if (t.underflow) return 0.0;
    return tensor_kernel(excess_alpha_imag_axis(p, xi), t, order, sign);
  };
  const MediumIntegral m = integrate_over_medium(integrand, rho, medium, spec);
  const double prefactor = -constants::hbar / (2.0 * constants::pi);
  return {prefactor * m.q.value, std::abs(prefactor) * m.q.error, m.truncated};
}

EnergyEstimate small_rho_asymptote(double rho, const OscillatorPolarizability& p,
                                   const MediumModel& medium, const QuadratureSpec& spec) {
  require_separation(rho);
  p.validate();
  const double eps0 = medium.eps_background();
  const double c = constants::c0 / std::sqrt(eps0);
  auto integrand = [&](double x) {
    if (x > constants::max_exponent) return 0.0;
    return x * x * std::exp(-x) * excess_alpha_imag_axis(p, x * c / rho);
  };
  const QuadratureResult q = integrate_semi_infinite(integrand, spec, 1.0);
  const double prefactor = -constants::hbar * constants::c0 /
                           (rho * rho * rho * rho * constants::pi * eps0 * std::sqrt(eps0));
  EnergyEstimate e{prefactor * q.value, std::abs(prefactor) * q.error, false};
  e.regime_warning = rho * medium.omega_p() / constants::c0 > 0.1;
  return e;
}

double large_rho_asymptote(double rho, double alpha_star_0, const MediumModel& medium) {
  require_separation(rho);
  if (medium.kind() != MediumKind::davies_ninham) {
    throw UsageError("large-rho asymptote needs a davies_ninham medium, got " +
                     std::string(to_string(medium.kind())));
  }
  const double wp = medium.omega_p();
  if (!(wp > 0.0)) throw DomainError("large-rho asymptote needs omega_p > 0");
  const double eps0 = medium.eps_background();
  const double c0sq = constants::c0 * constants::c0;
  const double eta3 = medium.eta() * medium.eta() * medium.eta();
  const double wp2 = wp * wp;
  const double rho7 = std::pow(rho, 7);
  constexpr double kGamma6 = 120.0;  // int_0^inf x^5 e^-x dx
  return -2.0 * constants::hbar * c0sq * c0sq * alpha_star_0 * eta3 /
         (rho7 * constants::pi * eps0 * eps0 * eps0 * wp2 * wp2 * wp2) * kGamma6;
}

double FiniteTEnergy::static_fraction() const {
  const double denom = std::abs(static_part) + std::abs(dynamic_part);
  return denom > 0.0 ? std::abs(static_part) / denom : 0.0;
}

FiniteTEnergy finite_T_energy(double rho, const OscillatorPolarizability& p,
                              const MediumModel& medium, const ElectrolyteParams& params,
                              const MatsubaraOptions& options, Order order, Branch branch) {
  require_separation(rho);
  p.validate();
  params.validate();
  const double sign = branch_sign(branch);
  const double kT = constants::k_boltzmann * params.temperature;

  FiniteTEnergy result;
  result.kappa = debye_kappa(params);

  const Susceptibility t0 = t_static_electrolyte(rho, result.kappa, params.eps_static);
  if (!t0.underflow) {
    result.static_part = kT * tensor_kernel(excess_alpha_imag_axis(p, 0.0), t0, order, sign);
  }

  const double light_speed = constants::c0 / std::sqrt(medium.eps_background());
  MatsubaraGrid grid = MatsubaraGrid::for_separation(params.temperature, rho, light_speed,
                                                     options.n_max_cap, options.tail);
  grid.rel_tol = options.rel_tol;
  const double floor_exponent = rho / light_speed;
  auto term = [&](std::size_t n, double xi) {
    if (n == 0) return 0.0;
    if (xi * floor_exponent > constants::max_exponent) return 0.0;
    const Susceptibility t = t_imag_axis_medium(rho, xi, medium);
    if (t.underflow) return 0.0;
    return tensor_kernel(excess_alpha_imag_axis(p, xi), t, order, sign);
  };
  const MatsubaraResult sum = matsubara_sum(term, grid);
  result.dynamic_part = -kT * sum.value;
  result.terms = sum.terms;
  result.converged = sum.converged;
  result.total = result.static_part + result.dynamic_part;
  return result;
}

}  // namespace resonant
