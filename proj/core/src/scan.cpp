#include "resonant/scan.hpp"

#include <fmt/format.h>

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "resonant/constants.hpp"
#include "resonant/errors.hpp"

namespace resonant {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kCsvHeader = "rho_cm,U_erg,U_eV,regime_label,flags";

struct PointValue {
  double energy = 0.0;
  std::uint32_t flags = 0;
  std::vector<double> components;
};

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

std::vector<std::string> component_columns_for(Scenario scenario) {
  switch (scenario) {
    case Scenario::electrolyte_finite_T:
      return {"U_static_erg", "U_dynamic_erg", "static_fraction", "matsubara_terms"};
    case Scenario::qed_comparison:
      return {"textbook_re_erg", "textbook_im_erg", "rate_near", "rate_intermediate", "rate_far"};
    case Scenario::modes:
      return {"omega_plus_perp", "omega_minus_perp", "omega_plus_par", "omega_minus_par"};
    default:
      return {};
  }
}

EnergyEstimate zero_T_or_best(double rho, const RunConfig& cfg, std::uint32_t& flags) {
  try {
    const EnergyEstimate e = zero_T_energy(rho, cfg.atom, cfg.medium, cfg.quadrature, cfg.order, cfg.branch);
    if (e.regime_warning) flags |= point_flag::regime_warning;
    return e;
  } catch (const ConvergenceError& e) {
    flags |= point_flag::not_converged;
    return EnergyEstimate{e.best_estimate(), e.error_estimate(), false};
  }
}

PointValue evaluate_point(double rho, const RunConfig& cfg, const ResonanceModes& at_inf) {
  PointValue point;
  switch (cfg.scenario) {
    case Scenario::vacuum_zero_T:
    case Scenario::electrolyte_zero_T:
      point.energy = zero_T_or_best(rho, cfg, point.flags).value;
      break;
    case Scenario::electrolyte_finite_T: {
      try {
        const FiniteTEnergy e =
            finite_T_energy(rho, cfg.atom, cfg.medium, *cfg.electrolyte, cfg.matsubara, cfg.order, cfg.branch);
        point.energy = e.total;
        if (!e.converged) point.flags |= point_flag::not_converged;
        point.components = {e.static_part, e.dynamic_part, e.static_fraction(),
                            static_cast<double>(e.terms)};
      } catch (const DivergenceError&) {
        point.flags |= point_flag::not_converged;
        point.components = {nan(), nan(), nan(), nan()};
      }
      break;
    }
    case Scenario::qed_comparison: {
      point.energy = zero_T_or_best(rho, cfg, point.flags).value;
      const auto textbook = textbook_energy(rho, cfg.atom, cfg.axis);
      const auto rate = qed_transfer_rate_terms(rho, cfg.atom.omega0);
      point.components = {textbook.real(), textbook.imag(), rate.near, rate.intermediate, rate.far};
      break;
    }
    case Scenario::modes: {
      try {
        const ResonanceModes modes = resonance_modes(rho, cfg.atom, cfg.medium);
        point.energy = energy_from_shift(modes, at_inf, cfg.branch);
        point.components = {modes.perp.omega_plus, modes.perp.omega_minus, modes.par.omega_plus,
                            modes.par.omega_minus};
      } catch (const StrongCouplingError&) {
        point.flags |= point_flag::not_converged;
        point.components = {nan(), nan(), nan(), nan()};
      }
      break;
    }
  }
  if (point.energy == 0.0 && !(point.flags & point_flag::not_converged)) {
    point.flags |= point_flag::underflow;
  }
  return point;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::map<std::string, std::string> provenance_for(const RunConfig& cfg) {
  std::map<std::string, std::string> p;
  p["operation"] = "run_scan";
  p["scenario"] = std::string(to_string(cfg.scenario));
  p["config_hash"] = cfg.config_hash;
  p["medium"] = std::string(to_string(cfg.medium.kind()));
  p["order"] = std::string(to_string(cfg.order));
  p["branch"] = std::string(to_string(cfg.branch));
  p["rel_tol"] = format_number(cfg.quadrature.rel_tol);
  p["alpha0"] = format_number(cfg.atom.alpha0);
  p["omega0_rad_s"] = format_number(cfg.atom.omega0);
  p["response"] = std::string(to_string(cfg.atom.response));
  if (cfg.electrolyte) {
    p["concentration_per_cm3"] = format_number(cfg.electrolyte->concentration);
    p["temperature_K"] = format_number(cfg.electrolyte->temperature);
  }
  return p;
}

double parse_double(std::string_view text, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw IoError(fmt::format("line {}: '{}' is not a number", line, text));
  }
  return value;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void check_written(std::ostream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::string format_number(double value) { return fmt::format("{:.16e}", value); }

ScanResult run_scan(const RunConfig& cfg) {
  cfg.validate();
  const std::vector<double> grid = log_grid(cfg.rho_min, cfg.rho_max, cfg.points_per_decade);
  const ResonanceModes at_inf = uncoupled_modes(cfg.atom);

  std::vector<PointValue> values(grid.size());
  parallel_for(grid.size(), cfg.threads,
               [&](std::size_t i) { values[i] = evaluate_point(grid[i], cfg, at_inf); });

  ScanResult result;
  EnergyCurve& curve = result.curve;
  curve.rho = grid;
  curve.energy.resize(grid.size());
  curve.flags.resize(grid.size());
  curve.labels.assign(grid.size(), RegimeLabel::unlabeled);
  curve.provenance = provenance_for(cfg);
  result.component_columns = component_columns_for(cfg.scenario);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    curve.energy[i] = values[i].energy;
    curve.flags[i] = values[i].flags;
    if (!result.component_columns.empty()) result.components.push_back(std::move(values[i].components));
  }

  ScanSummary& s = result.summary;
  s.scenario = cfg.scenario;
  s.points = grid.size();
  s.config_hash = cfg.config_hash;
  for (auto f : curve.flags) {
    if (f & (point_flag::not_converged | point_flag::underflow)) ++s.flagged_points;
    if (f & point_flag::not_converged) s.converged = false;
  }

  try {
    result.slopes = local_loglog_slope(curve, cfg.slope_window);
  } catch (const UsageError& e) {
    s.crossover_status = e.what();
  }
  if (result.slopes.size() > 0) {
    const auto& sl = result.slopes.slope;
    s.slope_first = sl.front();
    s.slope_last = sl.back();
    const auto [lo, hi] = std::minmax_element(sl.begin(), sl.end());
    s.slope_min = *lo;
    s.slope_max = *hi;
    label_power_law_regimes(curve, result.slopes, cfg.slope_tol);

    if (cfg.scenario == Scenario::electrolyte_zero_T) {
      try {
        const CrossoverResult c = detect_crossover(result.slopes, -4.0, -7.0, cfg.slope_tol);
        s.crossings = c.crossings;
        if (c.crossings > 0) s.rho_star = c.rho_star;
        s.crossover_status = c.crossings > 0 ? "found" : "no midpoint crossing";
      } catch (const RegimeNotReachedError& e) {
        s.crossover_status = e.what();
      }
    } else if (s.crossover_status.empty()) {
      s.crossover_status = "not attempted for this scenario";
    }
  }

  if (cfg.scenario == Scenario::qed_comparison) {
    for (std::size_t i = 0; i < curve.size(); ++i) {
      if (!(curve.flags[i] & point_flag::underflow)) curve.labels[i] = RegimeLabel::qed_comparison;
    }
  }
  if (cfg.scenario == Scenario::electrolyte_finite_T) {
    for (std::size_t i = 0; i < curve.size(); ++i) {
      const double fraction = result.components[i][2];
      if (std::isnan(fraction)) continue;
      if (fraction > 0.99) curve.labels[i] = RegimeLabel::screened_classical;
      s.static_fraction_min = std::min(s.static_fraction_min.value_or(fraction), fraction);
      s.static_fraction_max = std::max(s.static_fraction_max.value_or(fraction), fraction);
    }
  }
  if (cfg.electrolyte) {
    s.debye_length = debye_length(*cfg.electrolyte);
    s.frequency = frequency_scale_report(*cfg.electrolyte);
  }
  return result;
}

void emit_curve(const EnergyCurve& curve, OutputFormat format, std::ostream& out) {
  if (curve.size() == 0) throw UsageError("cannot emit an empty curve");
  curve.validate();
  if (format == OutputFormat::csv) {
    out << kCsvHeader << '\n';
    for (std::size_t i = 0; i < curve.size(); ++i) {
      out << format_number(curve.rho[i]) << ',' << format_number(curve.energy[i]) << ','
          << format_number(curve.energy[i] / constants::erg_per_ev) << ',' << to_string(curve.labels[i])
          << ',' << curve.flags[i] << '\n';
    }
    return;
  }
  out << "{\n  \"provenance\": {";
  bool first = true;
  for (const auto& [key, value] : curve.provenance) {
    out << (first ? "\n" : ",\n") << "    " << nlohmann::json(key).dump() << ": "
        << nlohmann::json(value).dump();
    first = false;
  }
  out << (first ? "},\n" : "\n  },\n") << "  \"points\": [\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out << "    {\"rho_cm\": " << format_number(curve.rho[i])
        << ", \"U_erg\": " << format_number(curve.energy[i])
        << ", \"U_eV\": " << format_number(curve.energy[i] / constants::erg_per_ev)
        << ", \"regime_label\": \"" << to_string(curve.labels[i]) << "\", \"flags\": " << curve.flags[i]
        << (i + 1 < curve.size() ? "},\n" : "}\n");
  }
  out << "  ]\n}\n";
}

void emit_curve(const EnergyCurve& curve, OutputFormat format, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  emit_curve(curve, format, out);
  check_written(out, path);
}

EnergyCurve parse_curve_csv(std::string_view text) {
  EnergyCurve curve;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool header = false;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header) {
      if (line != kCsvHeader) throw IoError("unexpected CSV header: " + std::string(line));
      header = true;
      continue;
    }
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma == std::string_view::npos ? line.size() - start : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 5) throw IoError(fmt::format("line {}: expected 5 fields", line_no));
    curve.rho.push_back(parse_double(fields[0], line_no));
    curve.energy.push_back(parse_double(fields[1], line_no));
    curve.labels.push_back(regime_label_from_string(fields[3]));
    std::uint32_t flags = 0;
    const auto [ptr, ec] = std::from_chars(fields[4].data(), fields[4].data() + fields[4].size(), flags);
    if (ec != std::errc() || ptr != fields[4].data() + fields[4].size()) {
      throw IoError(fmt::format("line {}: bad flags field", line_no));
    }
    curve.flags.push_back(flags);
  }
  if (!header) throw IoError("empty CSV input");
  return curve;
}

EnergyCurve parse_curve_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed curve JSON: ") + e.what());
  }
  EnergyCurve curve;
  try {
    for (const auto& [key, value] : doc.at("provenance").items()) {
      curve.provenance[key] = value.get<std::string>();
    }
    for (const auto& point : doc.at("points")) {
      curve.rho.push_back(point.at("rho_cm").get<double>());
      curve.energy.push_back(point.at("U_erg").get<double>());
      curve.labels.push_back(regime_label_from_string(point.at("regime_label").get<std::string>()));
      curve.flags.push_back(point.at("flags").get<std::uint32_t>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("curve JSON missing fields: ") + e.what());
  }
  return curve;
}

void emit_slopes(const SlopeProfile& profile, std::ostream& out) {
  out << "rho_cm,slope\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out << format_number(profile.rho[i]) << ',' << format_number(profile.slope[i]) << '\n';
  }
}

std::string summary_json(const ScanSummary& s) {
  ordered_json j;
  auto opt = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  j["scenario"] = to_string(s.scenario);
  j["config_hash"] = s.config_hash;
  j["points"] = s.points;
  j["flagged_points"] = s.flagged_points;
  j["converged"] = s.converged;
  j["slope_first"] = s.slope_first;
  j["slope_last"] = s.slope_last;
  j["slope_min"] = s.slope_min;
  j["slope_max"] = s.slope_max;
  j["rho_star_cm"] = opt(s.rho_star);
  j["crossings"] = s.crossings;
  j["crossover_status"] = s.crossover_status;
  const bool finite_debye = s.debye_length && std::isfinite(*s.debye_length);
  j["debye_length_cm"] = finite_debye ? ordered_json(*s.debye_length) : ordered_json(nullptr);
  j["debye_length_nm"] =
      finite_debye ? ordered_json(*s.debye_length / constants::cm_per_nm) : ordered_json(nullptr);
  if (s.frequency) {
    j["xi_1_rad_s"] = s.frequency->xi_1;
    j["omega_p_ionic_rad_s"] = s.frequency->omega_plasma_ionic;
    j["omega_p_over_xi_1"] = s.frequency->ratio;
  }
  j["static_fraction_min"] = opt(s.static_fraction_min);
  j["static_fraction_max"] = opt(s.static_fraction_max);
  return j.dump(2) + "\n";
}

ScanOutputs output_paths(const std::filesystem::path& out) {
  ScanOutputs paths;
  paths.curve = out;
  std::filesystem::path stem = out;
  stem.replace_extension();
  paths.slopes = stem.string() + ".slopes.csv";
  paths.summary = stem.string() + ".summary.json";
  paths.components = stem.string() + ".components.csv";
  return paths;
}

ScanOutputs write_scan(const ScanResult& result, OutputFormat format, const std::filesystem::path& out) {
  const ScanOutputs paths = output_paths(out);
  emit_curve(result.curve, format, paths.curve);
  {
    auto f = open_for_write(paths.slopes);
    emit_slopes(result.slopes, f);
    check_written(f, paths.slopes);
  }
  {
    auto f = open_for_write(paths.summary);
    f << summary_json(result.summary);
    check_written(f, paths.summary);
  }
  if (!result.component_columns.empty()) {
    auto f = open_for_write(paths.components);
    f << "rho_cm";
    for (const auto& c : result.component_columns) f << ',' << c;
    f << '\n';
    for (std::size_t i = 0; i < result.curve.size(); ++i) {
      f << format_number(result.curve.rho[i]);
      for (double v : result.components[i]) f << ',' << format_number(v);
      f << '\n';
    }
    check_written(f, paths.components);
  }
  return paths;
}

std::string modes_table(const RunConfig& cfg) {
  const auto grid = log_grid(cfg.rho_min, cfg.rho_max, cfg.points_per_decade);
  const ResonanceModes at_inf = uncoupled_modes(cfg.atom);
  std::ostringstream out;
  out << "rho_cm,omega_plus_perp,omega_minus_perp,omega_plus_par,omega_minus_par,"
         "first_order_shift_perp,first_order_shift_par,U_shift_erg\n";
  for (double rho : grid) {
    const ResonanceModes m = resonance_modes(rho, cfg.atom, cfg.medium);
    out << format_number(rho) << ',' << format_number(m.perp.omega_plus) << ','
        << format_number(m.perp.omega_minus) << ',' << format_number(m.par.omega_plus) << ','
        << format_number(m.par.omega_minus) << ','
        << format_number(first_order_shift(rho, cfg.atom, cfg.medium, Axis::perp)) << ','
        << format_number(first_order_shift(rho, cfg.atom, cfg.medium, Axis::par)) << ','
        << format_number(energy_from_shift(m, at_inf, cfg.branch)) << '\n';
  }
  return out.str();
}

std::string media_report(const RunConfig& cfg) {
  if (!cfg.electrolyte) throw ConfigError("media-report needs an [electrolyte] section");
  const ElectrolyteParams& e = *cfg.electrolyte;
  const FrequencyScaleReport f = frequency_scale_report(e);
  const double lambda = debye_length(e);
  ordered_json j;
  j["config_hash"] = cfg.config_hash;
  j["concentration_per_cm3"] = e.concentration;
  j["concentration_molar"] = e.concentration * 1000.0 / constants::avogadro;
  j["temperature_K"] = e.temperature;
  j["eps_static"] = e.eps_static;
  j["kappa_per_cm"] = debye_kappa(e);
  j["debye_length_cm"] = std::isfinite(lambda) ? ordered_json(lambda) : ordered_json(nullptr);
  j["debye_length_nm"] =
      std::isfinite(lambda) ? ordered_json(lambda / constants::cm_per_nm) : ordered_json(nullptr);
  j["xi_1_rad_s"] = f.xi_1;
  j["omega_p_ionic_rad_s"] = f.omega_plasma_ionic;
  j["omega_p_over_xi_1"] = f.ratio;
  j["medium"] = to_string(cfg.medium.kind());
  try {
    j["eps_at_xi_1"] = eval_epsilon(cfg.medium, f.xi_1);
  } catch (const DomainError&) {
    j["eps_at_xi_1"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string compare_asymptotes(const RunConfig& cfg) {
  const auto grid = log_grid(cfg.rho_min, cfg.rho_max, cfg.points_per_decade);
  const bool has_large = cfg.medium.kind() == MediumKind::davies_ninham;
  EnergyCurve exact, small, large;
  for (EnergyCurve* c : {&exact, &small, &large}) {
    c->rho = grid;
    c->energy.resize(grid.size());
    c->labels.assign(grid.size(), RegimeLabel::unlabeled);
    c->flags.assign(grid.size(), 0);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    exact.energy[i] = zero_T_or_best(grid[i], cfg, exact.flags[i]).value;
    const EnergyEstimate s = small_rho_asymptote(grid[i], cfg.atom, cfg.medium, cfg.quadrature);
    small.energy[i] = s.value;
    if (s.regime_warning) small.flags[i] |= point_flag::regime_warning;
    if (has_large) large.energy[i] = large_rho_asymptote(grid[i], cfg.atom.static_excess(), cfg.medium);
  }
  const DeviationReport ds = asymptote_deviation(exact, small);
  std::optional<DeviationReport> dl;
  if (has_large) dl = asymptote_deviation(exact, large);

  std::ostringstream out;
  out << fmt::format("# small-rho asymptote within {}: [{}, {}] cm\n", ds.threshold,
                     format_number(ds.rho_lo), format_number(ds.rho_hi));
  if (dl) {
    out << fmt::format("# large-rho asymptote within {}: [{}, {}] cm\n", dl->threshold,
                       format_number(dl->rho_lo), format_number(dl->rho_hi));
  }
  out << "rho_cm,U_erg,U_small_erg,U_large_erg,dev_small,dev_large,flags\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << format_number(grid[i]) << ',' << format_number(exact.energy[i]) << ','
        << format_number(small.energy[i]) << ','
        << (dl ? format_number(large.energy[i]) : "nan") << ',' << format_number(ds.deviation[i]) << ','
        << (dl ? format_number(dl->deviation[i]) : "nan") << ','
        << (exact.flags[i] | small.flags[i]) << '\n';
  }
  return out.str();
}

}  // namespace resonant
