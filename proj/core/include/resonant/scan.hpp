#pragma once

// Scan driver and curve I/O behind the command-line tool.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "resonant/analysis.hpp"
#include "resonant/config.hpp"

namespace resonant {

struct ScanSummary {
  Scenario scenario = Scenario::vacuum_zero_T;
  std::size_t points = 0;
  std::size_t flagged_points = 0;
  bool converged = true;

  double slope_first = 0.0;  // slope at the smallest fitted rho
  double slope_last = 0.0;   // slope at the largest fitted rho
  double slope_min = 0.0;
  double slope_max = 0.0;

  std::optional<double> rho_star;  // cm
  std::size_t crossings = 0;
  std::string crossover_status;    // "found" or the reason none was reported

  std::optional<double> debye_length;  // cm
  std::optional<FrequencyScaleReport> frequency;
  std::optional<double> static_fraction_min;
  std::optional<double> static_fraction_max;

  std::string config_hash;
};

struct ScanResult {
  EnergyCurve curve;
  SlopeProfile slopes;
  ScanSummary summary;
  /// Per-point decomposition; column names in component_columns.
  std::vector<std::string> component_columns;
  std::vector<std::vector<double>> components;
};

/// Evaluates the configured scenario on the log grid. Points whose engine fails to
/// converge keep the best estimate and carry point_flag::not_converged.
ScanResult run_scan(const RunConfig& config);

/// 17 significant digits, scientific notation.
std::string format_number(double value);

void emit_curve(const EnergyCurve& curve, OutputFormat format, std::ostream& out);
/// Writes to a file; IoError when the path cannot be written.
void emit_curve(const EnergyCurve& curve, OutputFormat format, const std::filesystem::path& path);

EnergyCurve parse_curve_csv(std::string_view text);
EnergyCurve parse_curve_json(std::string_view text);

void emit_slopes(const SlopeProfile& profile, std::ostream& out);
std::string summary_json(const ScanSummary& summary);

struct ScanOutputs {
  std::filesystem::path curve;
  std::filesystem::path slopes;      // <stem>.slopes.csv
  std::filesystem::path summary;     // <stem>.summary.json
  std::filesystem::path components;  // <stem>.components.csv
};

ScanOutputs output_paths(const std::filesystem::path& out);

/// Writes curve, slopes, summary and (when present) components next to `out`.
ScanOutputs write_scan(const ScanResult& result, OutputFormat format,
                       const std::filesystem::path& out);

/// Mode table: both branches on both axes, first-order shift and shift energy per rho.
std::string modes_table(const RunConfig& config);

/// Debye length, first Matsubara frequency and ionic plasma frequency as JSON.
std::string media_report(const RunConfig& config);

/// CSV of the exact curve against the small- and large-rho asymptotes with deviations.
std::string compare_asymptotes(const RunConfig& config);

}  // namespace resonant
