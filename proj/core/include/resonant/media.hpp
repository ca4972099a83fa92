#pragma once

// Dielectric response of the embedding medium on the imaginary frequency axis, plus the
// electrolyte quantities derived from it (Debye screening, ionic plasma frequency).
// Gaussian units throughout: lengths in cm, frequencies in rad/s.

#include <filesystem>
#include <string_view>
#include <vector>

namespace resonant {

enum class MediumKind { vacuum, constant_dielectric, davies_ninham, tabulated };

std::string_view to_string(MediumKind kind);

/// One sample of a tabulated response: eps(i xi) at xi (rad/s).
struct DielectricSample {
  double xi;
  double eps;
};

/// Immutable description of the medium between the two atoms.
///
/// eps_static is the zero-frequency dielectric constant used by the screened static
/// susceptibility; eval_epsilon() never covers xi = 0 for the Davies-Ninham form, which
/// diverges there. eps_background is the high-frequency limit eps0 of the Davies-Ninham
/// form, the constant value of a constant_dielectric medium, and the smallest tabulated
/// value of a tabulated one.
class MediumModel {
 public:
  static MediumModel vacuum();
  static MediumModel constant(double eps, double eps_static);
  static MediumModel constant(double eps) { return constant(eps, eps); }
  static MediumModel davies_ninham(double eps_background, double omega_p, double eta,
                                   double eps_static);
  /// Samples must be ascending in xi, positive, and non-increasing in eps.
  static MediumModel tabulated(std::vector<DielectricSample> table, double eps_static);

  MediumKind kind() const noexcept { return kind_; }
  double eps_static() const noexcept { return eps_static_; }
  double eps_background() const noexcept { return eps_background_; }
  double omega_p() const noexcept { return omega_p_; }
  double eta() const noexcept { return eta_; }
  const std::vector<DielectricSample>& table() const noexcept { return table_; }

 private:
  MediumModel() = default;

  MediumKind kind_ = MediumKind::vacuum;
  double eps_static_ = 1.0;
  double eps_background_ = 1.0;
  double omega_p_ = 0.0;
  double eta_ = 0.0;
  std::vector<DielectricSample> table_;
};

/// eps(i xi). Throws DomainError for xi <= 0 on a Davies-Ninham medium (or xi < 0 on
/// any medium) and ExtrapolationError outside a tabulated range.
double eval_epsilon(const MediumModel& medium, double xi);

/// c0 / sqrt(eps(i xi)), cm/s.
double medium_light_speed(const MediumModel& medium, double xi);

/// Reads two whitespace-separated columns (xi in rad/s, eps) with '#' comments.
std::vector<DielectricSample> read_dielectric_table(const std::filesystem::path& path);

/// Monovalent (1:1) electrolyte. concentration is the per-species number density.
struct ElectrolyteParams {
  double concentration = 0.0;  // cm^-3
  double temperature = 298.15;  // K
  double eps_static = 1.0;
  double ion_mass = 22.98976928 * 1.66053906660e-24;  // g, Na+

  void validate() const;
};

/// Inverse Debye length kappa_D = sqrt(8 pi N e^2 / (eps_w(0) k_B T)), cm^-1.
double debye_kappa(const ElectrolyteParams& params);

/// 1 / kappa_D in cm; +inf when the concentration is zero.
double debye_length(const ElectrolyteParams& params);

struct FrequencyScaleReport {
  double xi_1;                 // first nonzero Matsubara frequency, rad/s
  double omega_plasma_ionic;   // sqrt(4 pi N e^2 / m_ion), rad/s
  double ratio;                // omega_plasma_ionic / xi_1
};

FrequencyScaleReport frequency_scale_report(const ElectrolyteParams& params);

}  // namespace resonant
