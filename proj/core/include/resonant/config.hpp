#pragma once

// Run configuration: a flat key = value text file with [section] headers.
//
//   [run]          scenario, rho_min_nm, rho_max_nm, points_per_decade, rel_tol, ...
//   [atom]         alpha0 | alpha_static_cm3 | alpha_static_A3, omega0_rad_s | omega0_eV, ...
//   [medium]       kind, eps_static, eps_background, omega_p_rad_s, eta_rad_s, table_path
//   [electrolyte]  concentration_molar | concentration_per_cm3, temperature_K, ...
//
// The full key list lives in docs/config.md. Every error names the offending line.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "resonant/media.hpp"
#include "resonant/polarizability.hpp"
#include "resonant/quadrature.hpp"
#include "resonant/resonance.hpp"

namespace resonant {

/// Parsed key/value text with the line number of every entry.
class KeyValueFile {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };

  static KeyValueFile parse(std::string_view text);

  bool has(const std::string& section, const std::string& key) const;
  bool has_section(const std::string& section) const;
  const Entry* find(const std::string& section, const std::string& key) const;
  int section_line(const std::string& section) const;

  std::string get_string(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  long long get_integer(const std::string& section, const std::string& key) const;

  /// Marks keys read through the accessors above; unused() lists the rest.
  std::vector<std::pair<std::string, Entry>> unused() const;

 private:
  const Entry& require(const std::string& section, const std::string& key) const;

  std::map<std::string, std::map<std::string, Entry>> sections_;
  std::map<std::string, int> section_lines_;
  mutable std::map<std::string, bool> used_;
};

enum class Scenario { vacuum_zero_T, electrolyte_zero_T, electrolyte_finite_T, qed_comparison, modes };
enum class OutputFormat { csv, json };

std::string_view to_string(Scenario scenario);
std::string_view to_string(OutputFormat format);

struct RunConfig {
  Scenario scenario = Scenario::vacuum_zero_T;
  OscillatorPolarizability atom;
  MediumModel medium = MediumModel::vacuum();
  std::optional<ElectrolyteParams> electrolyte;

  double rho_min = 0.0;  // cm
  double rho_max = 0.0;  // cm
  int points_per_decade = 20;

  QuadratureSpec quadrature;
  MatsubaraOptions matsubara;
  std::size_t slope_window = 5;
  double slope_tol = 0.1;
  Order order = Order::first;
  Branch branch = Branch::antisymmetric;
  Axis axis = Axis::par;

  OutputFormat format = OutputFormat::csv;
  std::string output;  // empty: caller decides
  unsigned threads = 1;

  std::string config_hash;  // SHA-256 of the source text, hex

  void validate() const;
};

/// Parses configuration text; relative table paths resolve against base_dir.
RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir = {});

/// Reads and parses a configuration file. Missing file -> IoError.
RunConfig load_run_config(const std::filesystem::path& path);

/// Log-spaced grid from rho_min to rho_max (both included).
std::vector<double> log_grid(double rho_min, double rho_max, int points_per_decade);

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

}  // namespace resonant
