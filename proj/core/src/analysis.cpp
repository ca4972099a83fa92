#include "resonant/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "resonant/errors.hpp"

namespace resonant {

namespace {

double fit_slope(const std::vector<double>& x, const std::vector<double>& y, std::size_t first,
                 std::size_t count) {
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t k = first; k < first + count; ++k) {
    mean_x += x[k];
    mean_y += y[k];
  }
  mean_x /= static_cast<double>(count);
  mean_y /= static_cast<double>(count);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = first; k < first + count; ++k) {
    sxy += (x[k] - mean_x) * (y[k] - mean_y);
    sxx += (x[k] - mean_x) * (x[k] - mean_x);
  }
  return sxy / sxx;
}

SlopeProfile slopes_from_usable(const std::vector<double>& rho, const std::vector<double>& energy,
                                const std::vector<bool>& usable, std::size_t window) {
  if (window < 3 || window % 2 == 0) throw UsageError("slope window must be odd and >= 3");

  std::vector<double> log_rho;
  std::vector<double> log_u;
  std::vector<double> sign;
  std::vector<double> kept_rho;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!usable[i]) continue;
    kept_rho.push_back(rho[i]);
    log_rho.push_back(std::log(rho[i]));
    log_u.push_back(std::log(std::abs(energy[i])));
    sign.push_back(energy[i] > 0.0 ? 1.0 : -1.0);
  }
  if (kept_rho.size() < window) {
    std::ostringstream msg;
    msg << "curve has " << kept_rho.size() << " usable points, fewer than the window " << window;
    throw UsageError(msg.str());
  }

  SlopeProfile profile;
  profile.window = window;
  const std::size_t half = window / 2;
  for (std::size_t centre = half; centre + half < kept_rho.size(); ++centre) {
    const std::size_t first = centre - half;
    const bool mixed = std::any_of(sign.begin() + static_cast<std::ptrdiff_t>(first),
                                   sign.begin() + static_cast<std::ptrdiff_t>(first + window),
                                   [&](double s) { return s != sign[first]; });
    if (mixed) {
      profile.skipped_rho.push_back(kept_rho[centre]);
      continue;
    }
    profile.rho.push_back(kept_rho[centre]);
    profile.slope.push_back(fit_slope(log_rho, log_u, first, window));
  }
  return profile;
}

}  // namespace

SlopeProfile local_loglog_slope(const EnergyCurve& curve, std::size_t window) {
  curve.validate();
  std::vector<bool> usable(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    usable[i] = curve.energy[i] != 0.0 && !(curve.flags[i] & point_flag::underflow);
  }
  return slopes_from_usable(curve.rho, curve.energy, usable, window);
}

SlopeProfile local_loglog_slope(const std::vector<double>& rho, const std::vector<double>& energy,
                                std::size_t window) {
  if (rho.size() != energy.size()) throw UsageError("rho and energy lengths differ");
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0.0) || (i > 0 && !(rho[i] > rho[i - 1]))) {
      throw UsageError("rho grid must be positive and strictly increasing");
    }
  }
  std::vector<bool> usable(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) usable[i] = energy[i] != 0.0 && std::isfinite(energy[i]);
  return slopes_from_usable(rho, energy, usable, window);
}

CrossoverResult detect_crossover(const SlopeProfile& profile, double s1, double s2, double tol) {
  if (!(tol > 0.0) || !(tol < 0.5 * std::abs(s1 - s2))) {
    throw UsageError("crossover tolerance must be positive and below half the plateau gap");
  }
  CrossoverResult result;
  if (profile.size() == 0) throw RegimeNotReachedError("empty slope profile", 0.0, 0.0);
  const auto [lo, hi] = std::minmax_element(profile.slope.begin(), profile.slope.end());
  result.min_slope = *lo;
  result.max_slope = *hi;

  auto regime_error = [&](const char* which, double target) {
    std::ostringstream msg;
    msg << which << " plateau " << target << " +/- " << tol
        << " not reached; attained slopes span [" << result.min_slope << ", "
        << result.max_slope << "]";
    return RegimeNotReachedError(msg.str(), result.min_slope, result.max_slope);
  };

  auto first_s1 = std::find_if(profile.slope.begin(), profile.slope.end(),
                               [&](double s) { return std::abs(s - s1) <= tol; });
  if (first_s1 == profile.slope.end()) throw regime_error("small-rho", s1);
  auto last_s2 = std::find_if(profile.slope.rbegin(), profile.slope.rend(),
                              [&](double s) { return std::abs(s - s2) <= tol; });
  if (last_s2 == profile.slope.rend()) throw regime_error("large-rho", s2);
  const auto begin = static_cast<std::size_t>(first_s1 - profile.slope.begin());
  const auto end = profile.size() - 1 - static_cast<std::size_t>(last_s2 - profile.slope.rbegin());
  if (end <= begin) throw regime_error("large-rho (after small-rho)", s2);

  const double mid = 0.5 * (s1 + s2);
  for (std::size_t i = begin; i < end; ++i) {
    const double a = profile.slope[i] - mid;
    const double b = profile.slope[i + 1] - mid;
    if ((a < 0.0) == (b < 0.0)) continue;
    if (result.crossings == 0) {
      const double t = a == b ? 0.0 : a / (a - b);
      const double log_star = std::log(profile.rho[i]) +
                              t * (std::log(profile.rho[i + 1]) - std::log(profile.rho[i]));
      result.rho_star = std::exp(log_star);
    }
    ++result.crossings;
  }
  return result;
}

DeviationReport asymptote_deviation(const EnergyCurve& curve, const EnergyCurve& asymptote,
                                    double threshold) {
  if (curve.size() != asymptote.size()) throw UsageError("curves have different grid lengths");
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (std::abs(curve.rho[i] - asymptote.rho[i]) > 1e-12 * std::abs(curve.rho[i])) {
      throw UsageError("curves are sampled on different rho grids");
    }
  }
  DeviationReport report;
  report.threshold = threshold;
  report.deviation.resize(curve.size());
  std::size_t run_start = 0;
  std::size_t best_len = 0;
  std::size_t run_len = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double u = curve.energy[i];
    const double d = u == 0.0 ? (asymptote.energy[i] == 0.0 ? 0.0 : HUGE_VAL)
                              : std::abs(u - asymptote.energy[i]) / std::abs(u);
    report.deviation[i] = d;
    if (d < threshold) {
      ++report.within;
      if (run_len == 0) run_start = i;
      ++run_len;
      if (run_len > best_len) {
        best_len = run_len;
        report.rho_lo = curve.rho[run_start];
        report.rho_hi = curve.rho[i];
      }
    } else {
      run_len = 0;
    }
  }
  return report;
}

void label_power_law_regimes(EnergyCurve& curve, const SlopeProfile& profile, double tol) {
  if (profile.size() == 0) return;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve.energy[i] == 0.0 || (curve.flags[i] & point_flag::underflow)) continue;
    auto it = std::lower_bound(profile.rho.begin(), profile.rho.end(), curve.rho[i]);
    std::size_t k = it == profile.rho.end() ? profile.size() - 1
                                            : static_cast<std::size_t>(it - profile.rho.begin());
    if (k > 0 && it != profile.rho.end() &&
        std::abs(std::log(profile.rho[k - 1] / curve.rho[i])) <
            std::abs(std::log(profile.rho[k] / curve.rho[i]))) {
      --k;
    }
    const double s = profile.slope[k];
    if (std::abs(s + 4.0) <= tol) {
      curve.labels[i] = RegimeLabel::rho4;
    } else if (std::abs(s + 7.0) <= tol) {
      curve.labels[i] = RegimeLabel::rho7;
    } else {
      curve.labels[i] = RegimeLabel::crossover;
    }
  }
}

}  // namespace resonant
