#pragma once

// Resonance (excited-state, first-order) interaction between two identical atoms: exact
// imaginary-frequency forms at zero and finite temperature, the classical screened
// static term, both asymptotes, the perturbative comparison formulas, and the real-axis
// coupled-dipole mode solver.
//
// Sign convention: energies are anchored to the attractive asymptotes,
//   U(rho) = -(hbar / 2 pi) int_0^inf dxi alpha*(i xi) [2 T_xx + T_zz](rho, i xi)
//          = -(hbar / (rho pi c0^2)) int_0^inf dxi xi^2 alpha*(i xi) exp(-xi rho / c),
// and the n = 0 Matsubara term equals k_B T alpha(0)* [2 T_xx^0 + T_zz^0].

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "resonant/media.hpp"
#include "resonant/polarizability.hpp"
#include "resonant/quadrature.hpp"

namespace resonant {

enum class Axis { perp, par };
enum class Branch { antisymmetric, symmetric };
enum class Order { first, full_log };

std::string_view to_string(Axis axis);
std::string_view to_string(Branch branch);
std::string_view to_string(Order order);

enum class RegimeLabel { unlabeled, screened_classical, crossover, rho4, rho7, qed_comparison };

std::string_view to_string(RegimeLabel label);
RegimeLabel regime_label_from_string(std::string_view text);

/// Per-point status bits carried by an EnergyCurve.
namespace point_flag {
inline constexpr std::uint32_t underflow = 1u << 0;      // exponential below double range
inline constexpr std::uint32_t not_converged = 1u << 1;  // best estimate of a failed engine
inline constexpr std::uint32_t regime_warning = 1u << 2; // outside the regime of a form or table
}  // namespace point_flag

/// U(rho) sampled on an ascending grid. provenance records the producing operation and
/// its parameters as ordered key/value pairs.
struct EnergyCurve {
  std::vector<double> rho;     // cm
  std::vector<double> energy;  // erg
  std::vector<RegimeLabel> labels;
  std::vector<std::uint32_t> flags;
  std::map<std::string, std::string> provenance;

  std::size_t size() const { return rho.size(); }
  /// Strictly increasing positive grid, finite energies, matching column lengths.
  void validate() const;
};

struct EnergyEstimate {
  double value = 0.0;  // erg
  double error = 0.0;  // absolute error estimate, erg
  bool regime_warning = false;
};

/// Roots of 1 -/+ alpha(omega) T_axis(rho, omega) = 0 near omega0 for one principal axis.
struct ModePair {
  double omega_plus = 0.0;   // symmetric, P(1) = P(2)
  double omega_minus = 0.0;  // antisymmetric, P(1) = -P(2)
  double rho = 0.0;          // cm; +inf for the uncoupled pair
  Axis axis = Axis::perp;
  double width_plus = 0.0;   // radiative gamma at the root, rad/s (metadata only)
  double width_minus = 0.0;
};

struct ResonanceModes {
  ModePair perp;
  ModePair par;
};

/// Real-axis roots with damping neglected. Only vacuum and constant_dielectric media have
/// a real-axis response here; other kinds throw UsageError. Overstrong coupling throws
/// StrongCouplingError.
ResonanceModes resonance_modes(double rho, const OscillatorPolarizability& p,
                               const MediumModel& medium);
ModePair resonance_modes(double rho, const OscillatorPolarizability& p,
                         const MediumModel& medium, Axis axis);

/// Both roots equal omega0 for infinitely separated atoms.
ResonanceModes uncoupled_modes(const OscillatorPolarizability& p);

/// First-order estimate of omega_r - omega0 for the antisymmetric root:
/// alpha0 Re T_axis(rho, omega0) / (2 omega0).
double first_order_shift(double rho, const OscillatorPolarizability& p,
                         const MediumModel& medium, Axis axis);

/// hbar [omega_r(rho) - omega_r(inf)] for one axis.
double energy_from_shift(const ModePair& at_rho, const ModePair& at_inf,
                         Branch branch = Branch::antisymmetric);

/// Orientation average (2 perp + par) / 3 of the per-axis shift energies.
double energy_from_shift(const ResonanceModes& at_rho, const ResonanceModes& at_inf,
                         Branch branch = Branch::antisymmetric);

/// p^2 T_axis(rho, omega0) in vacuum on the real axis; complex in the retarded zone.
std::complex<double> textbook_energy(double rho, const OscillatorPolarizability& p, Axis axis);

struct RateShapeTerms {
  double near;          // 3 / rho^6
  double intermediate;  // (omega/c)^2 / rho^4
  double far;           // (omega/c)^4 / rho^2
  double total() const { return near + intermediate + far; }
};

RateShapeTerms qed_transfer_rate_terms(double rho, double omega_j);
double qed_transfer_rate_shape(double rho, double omega_j);

/// -k_B T alpha(0)* kappa_D^2 exp(-kappa_D rho) / (rho eps_w(0)), kappa_D from (N, T).
double classical_screened_energy(double rho, double alpha_star_0, const ElectrolyteParams& params);

/// Frequency at which the medium kernel exp(-xi rho sqrt(eps(i xi)) / c0) drops by e;
/// the integration variable is rescaled by it.
double decay_frequency(double rho, const MediumModel& medium);

/// Zero-temperature retarded energy by direct quadrature of the printed integral.
EnergyEstimate retarded_zero_T_energy(double rho, const OscillatorPolarizability& p,
                                      const MediumModel& medium, const QuadratureSpec& spec);

/// Zero-temperature energy from the tensor kernel: first order uses the trace, full_log
/// the per-axis logarithms. Equal to retarded_zero_T_energy at first order.
/// Tabulated media are integrated over the sampled range only; regime_warning is set when
/// the bounded remainder exceeds the requested tolerance.
EnergyEstimate zero_T_energy(double rho, const OscillatorPolarizability& p,
                             const MediumModel& medium, const QuadratureSpec& spec,
                             Order order = Order::first, Branch branch = Branch::antisymmetric);

/// Short-range form with eps = eps_background of the medium; regime_warning is set when
/// rho omega_p / c0 > 0.1.
EnergyEstimate small_rho_asymptote(double rho, const OscillatorPolarizability& p,
                                   const MediumModel& medium, const QuadratureSpec& spec);

/// -2 hbar c0^4 alpha(0)* eta^3 / (rho^7 pi eps0^3 omega_p^6) * 120 for a Davies-Ninham
/// medium; UsageError otherwise.
double large_rho_asymptote(double rho, double alpha_star_0, const MediumModel& medium);

struct MatsubaraOptions {
  std::size_t n_max_cap = 1000000;
  TailMode tail = TailMode::integral;
  double rel_tol = 1e-10;
};

struct FiniteTEnergy {
  double total = 0.0;          // erg
  double static_part = 0.0;    // n = 0 screened term
  double dynamic_part = 0.0;   // n >= 1 terms
  std::size_t terms = 0;
  bool converged = false;
  double kappa = 0.0;          // cm^-1 used for the static term

  /// |static| / (|static| + |dynamic|), 0 when both vanish.
  double static_fraction() const;
};

/// Matsubara form. n = 0 uses the Debye-screened static tensor (kappa and eps_w(0) from
/// params); n >= 1 uses the imaginary-axis tensor in the medium.
FiniteTEnergy finite_T_energy(double rho, const OscillatorPolarizability& p,
                              const MediumModel& medium, const ElectrolyteParams& params,
                              const MatsubaraOptions& options = {}, Order order = Order::first,
                              Branch branch = Branch::antisymmetric);

}  // namespace resonant
