#pragma once

// Curve diagnostics: local log-log slopes, crossover localization between two power-law
// plateaus, and asymptote deviation reports.

#include <cstddef>
#include <vector>

#include "resonant/resonance.hpp"

namespace resonant {

struct SlopeProfile {
  std::vector<double> rho;    // cm, centre of each fitted window
  std::vector<double> slope;  // d ln|U| / d ln rho
  std::size_t window = 0;
  std::vector<double> skipped_rho;  // windows dropped because U changed sign inside them

  std::size_t size() const { return rho.size(); }
};

/// Centred least-squares slope of ln|U| against ln rho over `window` consecutive usable
/// points (odd, >= 3). Points with U = 0 or the underflow flag are excluded first.
SlopeProfile local_loglog_slope(const EnergyCurve& curve, std::size_t window = 5);

SlopeProfile local_loglog_slope(const std::vector<double>& rho, const std::vector<double>& energy,
                                std::size_t window = 5);

struct CrossoverResult {
  double rho_star = 0.0;      // first crossing of the midpoint slope, cm
  std::size_t crossings = 0;  // number of midpoint crossings in the profile
  double min_slope = 0.0;
  double max_slope = 0.0;
};

/// Locates where the slope passes (s1 + s2) / 2, interpolating linearly in ln rho. The
/// profile must attain s1 +/- tol before s2 +/- tol; otherwise RegimeNotReachedError.
CrossoverResult detect_crossover(const SlopeProfile& profile, double s1, double s2, double tol);

struct DeviationReport {
  std::vector<double> deviation;  // |U - U_asym| / |U|, normalized by the first curve
  double threshold = 0.05;
  std::size_t within = 0;         // points with deviation < threshold
  double rho_lo = 0.0;            // longest contiguous run below threshold, cm
  double rho_hi = 0.0;
};

DeviationReport asymptote_deviation(const EnergyCurve& curve, const EnergyCurve& asymptote,
                                    double threshold = 0.05);

/// Labels each point rho4 / rho7 / crossover from the slope nearest to it (tolerance
/// `tol` around -4 and -7). Points without a usable slope are left unlabeled.
void label_power_law_regimes(EnergyCurve& curve, const SlopeProfile& profile, double tol);

}  // namespace resonant
