#include "resonant/config.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "resonant/constants.hpp"
#include "resonant/errors.hpp"

namespace resonant {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string line_prefix(int line) { return line > 0 ? "line " + std::to_string(line) + ": " : ""; }

std::string qualified(const std::string& section, const std::string& key) {
  return "[" + section + "] " + key;
}

template <class Enum, std::size_t N>
Enum parse_enum(const KeyValueFile& kv, const std::string& section, const std::string& key,
                const std::array<std::pair<std::string_view, Enum>, N>& choices, Enum fallback) {
  const auto* entry = kv.find(section, key);
  if (entry == nullptr) return fallback;
  const std::string value = kv.get_string(section, key);
  for (const auto& [name, e] : choices) {
    if (value == name) return e;
  }
  std::string allowed;
  for (const auto& [name, e] : choices) {
    allowed += allowed.empty() ? "" : ", ";
    allowed += name;
  }
  throw ConfigError(line_prefix(entry->line) + qualified(section, key) + " = '" + value +
                        "' is not one of {" + allowed + "}",
                    entry->line);
}

// Exactly one of the alternative keys must be present; returns its index or -1.
int pick_one(const KeyValueFile& kv, const std::string& section,
             std::initializer_list<const char*> keys, bool required) {
  int found = -1;
  int index = 0;
  for (const char* key : keys) {
    if (kv.has(section, key)) {
      if (found >= 0) {
        const auto* entry = kv.find(section, key);
        throw ConfigError(line_prefix(entry->line) + qualified(section, key) +
                              " conflicts with another key giving the same quantity",
                          entry->line);
      }
      found = index;
    }
    ++index;
  }
  if (found < 0 && required) {
    std::string names;
    for (const char* key : keys) names += std::string(names.empty() ? "" : " | ") + key;
    throw ConfigError(line_prefix(kv.section_line(section)) + "[" + section + "] requires one of " +
                          names,
                      kv.section_line(section));
  }
  return found;
}

template <class Check>
void check(const KeyValueFile& kv, const std::string& section, const std::string& key, Check ok,
           const std::string& requirement) {
  const auto* entry = kv.find(section, key);
  if (entry == nullptr) return;
  if (!ok()) {
    throw ConfigError(line_prefix(entry->line) + qualified(section, key) + " " + requirement,
                      entry->line);
  }
}

OscillatorPolarizability parse_atom(const KeyValueFile& kv) {
  const std::string s = "atom";
  if (!kv.has_section(s)) throw ConfigError("missing [atom] section");
  OscillatorPolarizability p;

  const int omega_key = pick_one(kv, s, {"omega0_rad_s", "omega0_eV"}, true);
  p.omega0 = omega_key == 0 ? kv.get_double(s, "omega0_rad_s")
                            : constants::ev_to_rad_per_s(kv.get_double(s, "omega0_eV"));
  check(kv, s, omega_key == 0 ? "omega0_rad_s" : "omega0_eV", [&] { return p.omega0 > 0.0; },
        "must be > 0");

  const int alpha_key = pick_one(kv, s, {"alpha0", "alpha_static_cm3", "alpha_static_A3"}, true);
  const char* alpha_name = alpha_key == 0 ? "alpha0" : alpha_key == 1 ? "alpha_static_cm3" : "alpha_static_A3";
  const double alpha_value = kv.get_double(s, alpha_name);
  check(kv, s, alpha_name, [&] { return alpha_value > 0.0; }, "must be > 0");
  if (alpha_key == 0) {
    p.alpha0 = alpha_value;
  } else {
    const double alpha_static = alpha_key == 1 ? alpha_value : alpha_value * 1e-24;
    p.alpha0 = alpha_static * p.omega0 * p.omega0;
  }

  p.response = parse_enum<ResponseMode, 2>(
      kv, s, "response", {{{"lorentz", ResponseMode::lorentz}, {"static", ResponseMode::static_limit}}},
      ResponseMode::lorentz);
  p.damping = parse_enum<DampingMode, 2>(
      kv, s, "damping", {{{"none", DampingMode::none}, {"radiation", DampingMode::radiation}}},
      DampingMode::none);

  const int star_key = pick_one(kv, s, {"alpha_star_0_cm3", "alpha_star_0_A3"}, false);
  if (star_key >= 0) {
    const char* name = star_key == 0 ? "alpha_star_0_cm3" : "alpha_star_0_A3";
    const double value = kv.get_double(s, name) * (star_key == 0 ? 1.0 : 1e-24);
    check(kv, s, name, [&] { return value >= 0.0; }, "must be >= 0");
    p.alpha_star_0 = value;
  }
  p.validate();
  return p;
}

MediumModel parse_medium(const KeyValueFile& kv, const std::filesystem::path& base_dir) {
  const std::string s = "medium";
  if (!kv.has_section(s)) return MediumModel::vacuum();
  const MediumKind kind = parse_enum<MediumKind, 5>(
      kv, s, "kind",
      {{{"vacuum", MediumKind::vacuum},
        {"constant", MediumKind::constant_dielectric},
        {"constant_dielectric", MediumKind::constant_dielectric},
        {"davies_ninham", MediumKind::davies_ninham},
        {"tabulated", MediumKind::tabulated}}},
      MediumKind::vacuum);

  auto dielectric = [&](const char* key, std::optional<double> fallback) {
    if (!kv.has(s, key)) {
      if (fallback) return *fallback;
      throw ConfigError(line_prefix(kv.section_line(s)) + "[medium] kind = " +
                            std::string(to_string(kind)) + " requires " + key,
                        kv.section_line(s));
    }
    const double v = kv.get_double(s, key);
    check(kv, s, key, [&] { return v >= 1.0; }, "must be >= 1");
    return v;
  };
  auto positive = [&](const char* key, bool strict) {
    if (!kv.has(s, key)) {
      throw ConfigError(line_prefix(kv.section_line(s)) + "[medium] davies_ninham requires " + key,
                        kv.section_line(s));
    }
    const double v = kv.get_double(s, key);
    check(kv, s, key, [&] { return strict ? v > 0.0 : v >= 0.0; },
          strict ? "must be > 0" : "must be >= 0");
    return v;
  };

  switch (kind) {
    case MediumKind::vacuum:
      return MediumModel::vacuum();
    case MediumKind::constant_dielectric: {
      const double eps = dielectric("eps_background", std::nullopt);
      return MediumModel::constant(eps, dielectric("eps_static", eps));
    }
    case MediumKind::davies_ninham: {
      const double eps0 = dielectric("eps_background", std::nullopt);
      const double wp = positive("omega_p_rad_s", false);
      const double eta = positive("eta_rad_s", true);
      return MediumModel::davies_ninham(eps0, wp, eta, dielectric("eps_static", eps0));
    }
    case MediumKind::tabulated: {
      if (!kv.has(s, "table_path")) {
        throw ConfigError(line_prefix(kv.section_line(s)) + "[medium] tabulated requires table_path",
                          kv.section_line(s));
      }
      std::filesystem::path table = kv.get_string(s, "table_path");
      if (table.is_relative() && !base_dir.empty()) table = base_dir / table;
      const double eps_static = dielectric("eps_static", std::nullopt);
      try {
        return MediumModel::tabulated(read_dielectric_table(table), eps_static);
      } catch (const DomainError& e) {
        const int line = kv.find(s, "table_path")->line;
        throw ConfigError(line_prefix(line) + table.string() + ": " + e.what(), line);
      }
    }
  }
  return MediumModel::vacuum();
}

std::optional<ElectrolyteParams> parse_electrolyte(const KeyValueFile& kv, const MediumModel& medium) {
  const std::string s = "electrolyte";
  if (!kv.has_section(s)) return std::nullopt;
  ElectrolyteParams e;
  const int conc_key = pick_one(kv, s, {"concentration_molar", "concentration_per_cm3"}, true);
  const char* conc_name = conc_key == 0 ? "concentration_molar" : "concentration_per_cm3";
  const double conc = kv.get_double(s, conc_name);
  check(kv, s, conc_name, [&] { return conc >= 0.0; }, "must be >= 0");
  e.concentration = conc_key == 0 ? constants::molar_to_per_cm3(conc) : conc;

  if (!kv.has(s, "temperature_K")) {
    throw ConfigError(line_prefix(kv.section_line(s)) + "[electrolyte] requires temperature_K",
                      kv.section_line(s));
  }
  e.temperature = kv.get_double(s, "temperature_K");
  check(kv, s, "temperature_K", [&] { return e.temperature > 0.0; }, "must be > 0");

  e.eps_static = kv.has(s, "eps_static") ? kv.get_double(s, "eps_static") : medium.eps_static();
  check(kv, s, "eps_static", [&] { return e.eps_static >= 1.0; }, "must be >= 1");
  if (kv.has(s, "ion_mass_amu")) {
    const double amu = kv.get_double(s, "ion_mass_amu");
    check(kv, s, "ion_mass_amu", [&] { return amu > 0.0; }, "must be > 0");
    e.ion_mass = amu * constants::amu_g;
  }
  e.validate();
  return e;
}

}  // namespace

KeyValueFile KeyValueFile::parse(std::string_view text) {
  KeyValueFile kv;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view raw = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto comment = raw.find_first_of("#;"); comment != std::string_view::npos) {
      raw = raw.substr(0, comment);
    }
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError(line_prefix(line_no) + "malformed section header", line_no);
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (kv.section_lines_.count(section)) {
        throw ConfigError(line_prefix(line_no) + "duplicate section [" + section + "]", line_no);
      }
      kv.section_lines_[section] = line_no;
      kv.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_prefix(line_no) + "expected 'key = value'", line_no);
    }
    if (section.empty()) {
      throw ConfigError(line_prefix(line_no) + "key outside of any [section]", line_no);
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(line_prefix(line_no) + "empty key", line_no);
    auto& entries = kv.sections_[section];
    if (entries.count(key)) {
      throw ConfigError(line_prefix(line_no) + "duplicate key " + qualified(section, key), line_no);
    }
    entries[key] = Entry{value, line_no};
  }
  return kv;
}

bool KeyValueFile::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

bool KeyValueFile::has_section(const std::string& section) const {
  return sections_.count(section) > 0;
}

const KeyValueFile::Entry* KeyValueFile::find(const std::string& section,
                                              const std::string& key) const {
  auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  auto e = s->second.find(key);
  return e == s->second.end() ? nullptr : &e->second;
}

int KeyValueFile::section_line(const std::string& section) const {
  auto it = section_lines_.find(section);
  return it == section_lines_.end() ? 0 : it->second;
}

const KeyValueFile::Entry& KeyValueFile::require(const std::string& section,
                                                 const std::string& key) const {
  const Entry* entry = find(section, key);
  if (entry == nullptr) {
    throw ConfigError(line_prefix(section_line(section)) + "missing " + qualified(section, key),
                      section_line(section));
  }
  used_[section + "." + key] = true;
  return *entry;
}

std::string KeyValueFile::get_string(const std::string& section, const std::string& key) const {
  return require(section, key).value;
}

double KeyValueFile::get_double(const std::string& section, const std::string& key) const {
  const Entry& entry = require(section, key);
  double value = 0.0;
  const char* begin = entry.value.data();
  const char* end = begin + entry.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(line_prefix(entry.line) + qualified(section, key) + " = '" + entry.value +
                          "' is not a finite number",
                      entry.line);
  }
  return value;
}

long long KeyValueFile::get_integer(const std::string& section, const std::string& key) const {
  const Entry& entry = require(section, key);
  long long value = 0;
  const char* begin = entry.value.data();
  const char* end = begin + entry.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    // Accept integral values written in floating notation, e.g. 1e6.
    const double d = get_double(section, key);
    if (d != std::floor(d) || std::abs(d) > 9.0e18) {
      throw ConfigError(line_prefix(entry.line) + qualified(section, key) + " = '" + entry.value +
                            "' is not an integer",
                        entry.line);
    }
    return static_cast<long long>(d);
  }
  return value;
}

std::vector<std::pair<std::string, KeyValueFile::Entry>> KeyValueFile::unused() const {
  std::vector<std::pair<std::string, Entry>> out;
  for (const auto& [section, entries] : sections_) {
    for (const auto& [key, entry] : entries) {
      if (!used_.count(section + "." + key)) out.emplace_back(qualified(section, key), entry);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.second.line < b.second.line; });
  return out;
}

std::string_view to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::vacuum_zero_T: return "vacuum_zero_T";
    case Scenario::electrolyte_zero_T: return "electrolyte_zero_T";
    case Scenario::electrolyte_finite_T: return "electrolyte_finite_T";
    case Scenario::qed_comparison: return "qed_comparison";
    case Scenario::modes: return "modes";
  }
  return "unknown";
}

std::string_view to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

void RunConfig::validate() const {
  if (!(rho_min > 0.0) || !(rho_max > rho_min)) {
    throw ConfigError("rho range must satisfy 0 < rho_min < rho_max");
  }
  if (points_per_decade < 4) throw ConfigError("points_per_decade must be >= 4");
  if (slope_window < 3 || slope_window % 2 == 0) throw ConfigError("slope_window must be odd and >= 3");
  if (!(slope_tol > 0.0 && slope_tol < 1.5)) throw ConfigError("slope_tol must lie in (0, 1.5)");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  const bool needs_electrolyte =
      scenario == Scenario::electrolyte_zero_T || scenario == Scenario::electrolyte_finite_T;
  if (needs_electrolyte && !electrolyte) {
    throw ConfigError(std::string(to_string(scenario)) + " requires an [electrolyte] section");
  }
  try {
    quadrature.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir) {
  const KeyValueFile kv = KeyValueFile::parse(text);
  RunConfig cfg;
  cfg.config_hash = sha256_hex(text);
  const std::string r = "run";
  if (!kv.has_section(r)) throw ConfigError("missing [run] section");

  if (!kv.has(r, "scenario")) {
    throw ConfigError(line_prefix(kv.section_line(r)) + "[run] requires scenario", kv.section_line(r));
  }
  cfg.scenario = parse_enum<Scenario, 5>(
      kv, r, "scenario",
      {{{"vacuum_zero_T", Scenario::vacuum_zero_T},
        {"electrolyte_zero_T", Scenario::electrolyte_zero_T},
        {"electrolyte_finite_T", Scenario::electrolyte_finite_T},
        {"qed_comparison", Scenario::qed_comparison},
        {"modes", Scenario::modes}}},
      Scenario::vacuum_zero_T);

  const int min_key = pick_one(kv, r, {"rho_min_nm", "rho_min_cm"}, true);
  const int max_key = pick_one(kv, r, {"rho_max_nm", "rho_max_cm"}, true);
  cfg.rho_min = min_key == 0 ? kv.get_double(r, "rho_min_nm") * constants::cm_per_nm
                             : kv.get_double(r, "rho_min_cm");
  cfg.rho_max = max_key == 0 ? kv.get_double(r, "rho_max_nm") * constants::cm_per_nm
                             : kv.get_double(r, "rho_max_cm");
  const char* min_name = min_key == 0 ? "rho_min_nm" : "rho_min_cm";
  const char* max_name = max_key == 0 ? "rho_max_nm" : "rho_max_cm";
  check(kv, r, min_name, [&] { return cfg.rho_min > 0.0; }, "must be > 0");
  check(kv, r, max_name, [&] { return cfg.rho_max > cfg.rho_min; }, "must exceed the minimum separation");

  if (kv.has(r, "points_per_decade")) {
    cfg.points_per_decade = static_cast<int>(kv.get_integer(r, "points_per_decade"));
    check(kv, r, "points_per_decade", [&] { return cfg.points_per_decade >= 4; }, "must be >= 4");
  }
  if (kv.has(r, "rel_tol")) {
    cfg.quadrature.rel_tol = kv.get_double(r, "rel_tol");
    cfg.matsubara.rel_tol = cfg.quadrature.rel_tol;
    check(kv, r, "rel_tol", [&] { return cfg.quadrature.rel_tol > 0.0 && cfg.quadrature.rel_tol <= 1e-2; },
          "must lie in (0, 1e-2]");
  }
  if (kv.has(r, "max_evals")) {
    cfg.quadrature.max_evals = static_cast<int>(kv.get_integer(r, "max_evals"));
    check(kv, r, "max_evals", [&] { return cfg.quadrature.max_evals >= 64; }, "must be >= 64");
  }
  if (kv.has(r, "n_max_cap")) {
    const long long cap = kv.get_integer(r, "n_max_cap");
    check(kv, r, "n_max_cap", [&] { return cap >= 1; }, "must be >= 1");
    cfg.matsubara.n_max_cap = static_cast<std::size_t>(cap);
  }
  cfg.matsubara.tail = parse_enum<TailMode, 3>(
      kv, r, "tail",
      {{{"none", TailMode::none}, {"geometric", TailMode::geometric}, {"integral", TailMode::integral}}},
      TailMode::integral);
  if (kv.has(r, "slope_window")) {
    const long long w = kv.get_integer(r, "slope_window");
    check(kv, r, "slope_window", [&] { return w >= 3 && w % 2 == 1; }, "must be odd and >= 3");
    cfg.slope_window = static_cast<std::size_t>(w);
  }
  if (kv.has(r, "slope_tol")) {
    cfg.slope_tol = kv.get_double(r, "slope_tol");
    check(kv, r, "slope_tol", [&] { return cfg.slope_tol > 0.0 && cfg.slope_tol < 1.5; },
          "must lie in (0, 1.5)");
  }
  cfg.order = parse_enum<Order, 2>(kv, r, "order",
                                   {{{"first", Order::first}, {"full_log", Order::full_log}}},
                                   Order::first);
  cfg.branch = parse_enum<Branch, 2>(
      kv, r, "branch",
      {{{"antisymmetric", Branch::antisymmetric}, {"symmetric", Branch::symmetric}}},
      Branch::antisymmetric);
  cfg.axis = parse_enum<Axis, 2>(kv, r, "axis", {{{"perp", Axis::perp}, {"par", Axis::par}}}, Axis::par);
  cfg.format = parse_enum<OutputFormat, 2>(
      kv, r, "format", {{{"csv", OutputFormat::csv}, {"json", OutputFormat::json}}}, OutputFormat::csv);
  if (kv.has(r, "output")) cfg.output = kv.get_string(r, "output");
  if (kv.has(r, "threads")) {
    const long long t = kv.get_integer(r, "threads");
    check(kv, r, "threads", [&] { return t >= 1 && t <= 1024; }, "must lie in [1, 1024]");
    cfg.threads = static_cast<unsigned>(t);
  }

  cfg.atom = parse_atom(kv);
  cfg.medium = parse_medium(kv, base_dir);
  cfg.electrolyte = parse_electrolyte(kv, cfg.medium);

  if ((cfg.scenario == Scenario::vacuum_zero_T || cfg.scenario == Scenario::modes) &&
      cfg.medium.kind() != MediumKind::vacuum &&
      cfg.medium.kind() != MediumKind::constant_dielectric) {
    const auto* kind = kv.find("medium", "kind");
    const int line = kind ? kind->line : 0;
    throw ConfigError(line_prefix(line) + std::string(to_string(cfg.scenario)) +
                          " needs kind = vacuum or constant",
                      line);
  }
  if ((cfg.scenario == Scenario::electrolyte_zero_T ||
       cfg.scenario == Scenario::electrolyte_finite_T) &&
      !cfg.electrolyte) {
    throw ConfigError(line_prefix(kv.find(r, "scenario")->line) + std::string(to_string(cfg.scenario)) +
                          " requires an [electrolyte] section",
                      kv.find(r, "scenario")->line);
  }

  if (const auto stray = kv.unused(); !stray.empty()) {
    const auto& [name, entry] = stray.front();
    throw ConfigError(line_prefix(entry.line) + "unknown key " + name, entry.line);
  }
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_run_config(buffer.str(), path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what(), e.line());
  }
}

std::vector<double> log_grid(double rho_min, double rho_max, int points_per_decade) {
  if (!(rho_min > 0.0) || !(rho_max > rho_min)) throw DomainError("log_grid needs 0 < min < max");
  if (points_per_decade < 1) throw DomainError("points_per_decade must be >= 1");
  const double decades = std::log10(rho_max / rho_min);
  const auto intervals = std::max<long>(1, std::lround(decades * points_per_decade));
  std::vector<double> grid(static_cast<std::size_t>(intervals) + 1);
  const double log_min = std::log(rho_min);
  const double step = (std::log(rho_max) - log_min) / static_cast<double>(intervals);
  for (long i = 0; i <= intervals; ++i) grid[static_cast<std::size_t>(i)] = std::exp(log_min + step * i);
  grid.front() = rho_min;
  grid.back() = rho_max;
  return grid;
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

}  // namespace resonant
