#include "resonant/media.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "resonant/constants.hpp"
#include "resonant/errors.hpp"

namespace resonant {

namespace {

void require_dielectric(double eps, const char* name) {
  if (!(eps >= 1.0) || !std::isfinite(eps)) {
    throw DomainError(std::string(name) + " must be a finite value >= 1, got " +
                      std::to_string(eps));
  }
}

double interpolate_log_log(const std::vector<DielectricSample>& table, double xi) {
  const auto& lo = table.front();
  const auto& hi = table.back();
  if (xi < lo.xi || xi > hi.xi) {
    std::ostringstream msg;
    msg << "xi = " << xi << " rad/s outside tabulated range [" << lo.xi << ", " << hi.xi
        << "]";
    throw ExtrapolationError(msg.str());
  }
  auto upper = std::upper_bound(table.begin(), table.end(), xi,
                                [](double x, const DielectricSample& s) { return x < s.xi; });
  if (upper == table.end()) return hi.eps;
  auto lower = std::prev(upper);
  if (xi == lower->xi) return lower->eps;
  const double t = std::log(xi / lower->xi) / std::log(upper->xi / lower->xi);
  return std::exp(std::log(lower->eps) + t * std::log(upper->eps / lower->eps));
}

}  // namespace

std::string_view to_string(MediumKind kind) {
  switch (kind) {
    case MediumKind::vacuum: return "vacuum";
    case MediumKind::constant_dielectric: return "constant_dielectric";
    case MediumKind::davies_ninham: return "davies_ninham";
    case MediumKind::tabulated: return "tabulated";
  }
  return "unknown";
}

MediumModel MediumModel::vacuum() { return MediumModel{}; }

MediumModel MediumModel::constant(double eps, double eps_static) {
  require_dielectric(eps, "eps_background");
  require_dielectric(eps_static, "eps_static");
  MediumModel m;
  m.kind_ = MediumKind::constant_dielectric;
  m.eps_background_ = eps;
  m.eps_static_ = eps_static;
  return m;
}

MediumModel MediumModel::davies_ninham(double eps_background, double omega_p, double eta,
                                       double eps_static) {
  require_dielectric(eps_background, "eps_background");
  require_dielectric(eps_static, "eps_static");
  if (!(omega_p >= 0.0) || !std::isfinite(omega_p)) {
    throw DomainError("omega_p must be >= 0");
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw DomainError("eta must be > 0 for a Davies-Ninham medium");
  }
  MediumModel m;
  m.kind_ = MediumKind::davies_ninham;
  m.eps_background_ = eps_background;
  m.eps_static_ = eps_static;
  m.omega_p_ = omega_p;
  m.eta_ = eta;
  return m;
}

MediumModel MediumModel::tabulated(std::vector<DielectricSample> table, double eps_static) {
  require_dielectric(eps_static, "eps_static");
  if (table.size() < 2) throw DomainError("tabulated medium needs at least two samples");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& s = table[i];
    if (!(s.xi > 0.0) || !std::isfinite(s.xi)) {
      throw DomainError("tabulated xi must be positive (log-log interpolation)");
    }
    if (!(s.eps >= 1.0) || !std::isfinite(s.eps)) {
      throw DomainError("tabulated eps(i xi) must be at least 1");
    }
    if (i > 0) {
      if (!(s.xi > table[i - 1].xi)) throw DomainError("tabulated xi must be ascending");
      if (s.eps > table[i - 1].eps) {
        throw DomainError("tabulated eps(i xi) must be non-increasing in xi");
      }
    }
  }
  MediumModel m;
  m.kind_ = MediumKind::tabulated;
  m.eps_static_ = eps_static;
  m.eps_background_ = std::max(1.0, table.back().eps);
  m.table_ = std::move(table);
  return m;
}

double eval_epsilon(const MediumModel& medium, double xi) {
  if (std::isnan(xi) || xi < 0.0) throw DomainError("eval_epsilon: xi must be >= 0");
  switch (medium.kind()) {
    case MediumKind::vacuum:
      return 1.0;
    case MediumKind::constant_dielectric:
      return medium.eps_background();
    case MediumKind::davies_ninham: {
      if (!(xi > 0.0)) {
        throw DomainError(
            "Davies-Ninham response diverges at xi = 0; use eps_static for the static term");
      }
      const double wp = medium.omega_p();
      return medium.eps_background() * (1.0 + wp * wp / (xi * (xi + medium.eta())));
    }
    case MediumKind::tabulated:
      return interpolate_log_log(medium.table(), xi);
  }
  return 1.0;
}

double medium_light_speed(const MediumModel& medium, double xi) {
  return constants::c0 / std::sqrt(eval_epsilon(medium, xi));
}

std::vector<DielectricSample> read_dielectric_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dielectric table " + path.string());
  std::vector<DielectricSample> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    DielectricSample s{};
    if (!(fields >> s.xi)) continue;
    std::string extra;
    if (!(fields >> s.eps) || (fields >> extra)) {
      throw ConfigError(path.string() + ": expected two columns (xi eps)", line_no);
    }
    samples.push_back(s);
  }
  return samples;
}

void ElectrolyteParams::validate() const {
  if (!(concentration >= 0.0) || !std::isfinite(concentration)) {
    throw DomainError("ionic concentration must be >= 0");
  }
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("temperature must be > 0");
  }
  require_dielectric(eps_static, "eps_static");
  if (!(ion_mass > 0.0)) throw DomainError("ion mass must be > 0");
}

double debye_kappa(const ElectrolyteParams& params) {
  params.validate();
  if (params.concentration == 0.0) return 0.0;
  const double e2 = constants::e_charge * constants::e_charge;
  return std::sqrt(8.0 * constants::pi * params.concentration * e2 /
                   (params.eps_static * constants::k_boltzmann * params.temperature));
}

double debye_length(const ElectrolyteParams& params) {
  const double kappa = debye_kappa(params);
  return kappa > 0.0 ? 1.0 / kappa : std::numeric_limits<double>::infinity();
}

FrequencyScaleReport frequency_scale_report(const ElectrolyteParams& params) {
  params.validate();
  FrequencyScaleReport r{};
  r.xi_1 = 2.0 * constants::pi * constants::k_boltzmann * params.temperature / constants::hbar;
  const double e2 = constants::e_charge * constants::e_charge;
  r.omega_plasma_ionic =
      std::sqrt(4.0 * constants::pi * params.concentration * e2 / params.ion_mass);
  r.ratio = r.omega_plasma_ionic / r.xi_1;
  return r;
}

}  // namespace resonant
