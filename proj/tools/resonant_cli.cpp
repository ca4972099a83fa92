// resonant: command-line front end for resonance interaction scans.
//
//   resonant scan --config run.ini --out curve.csv
//   resonant modes --config modes.ini
//   resonant media-report --config electrolyte.ini
//   resonant compare-asymptotes --config dn.ini --out compare.csv
//
// Exit codes: 0 ok, 2 configuration/domain error, 3 non-convergence, 4 I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "resonant/config.hpp"
#include "resonant/errors.hpp"
#include "resonant/scan.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kNonConvergence = 3, kIo = 4 };

struct CommonOptions {
  std::string config;
  std::string out;
  std::string format;
  std::optional<double> rel_tol;
  std::optional<unsigned> threads;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "Run configuration file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "Output path (stdout when omitted)");
  cmd->add_option("--format", o.format, "Curve format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--rel-tol", o.rel_tol, "Relative tolerance override")->check(CLI::Range(1e-15, 1e-2));
  cmd->add_option("--threads", o.threads, "Worker threads for scan points")->check(CLI::Range(1u, 1024u));
}

resonant::RunConfig load(const CommonOptions& o) {
  resonant::RunConfig cfg = resonant::load_run_config(o.config);
  if (!o.format.empty()) cfg.format = o.format == "json" ? resonant::OutputFormat::json : resonant::OutputFormat::csv;
  if (o.rel_tol) {
    cfg.quadrature.rel_tol = *o.rel_tol;
    cfg.matsubara.rel_tol = *o.rel_tol;
  }
  if (o.threads) cfg.threads = *o.threads;
  if (!o.out.empty()) cfg.output = o.out;
  return cfg;
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw resonant::IoError("cannot write " + path);
  f << text;
  f.flush();
  if (!f) throw resonant::IoError("write failed for " + path);
}

int run_scan_command(const CommonOptions& o) {
  const resonant::RunConfig cfg = load(o);
  const resonant::ScanResult result = resonant::run_scan(cfg);
  if (cfg.output.empty()) {
    resonant::emit_curve(result.curve, cfg.format, std::cout);
    std::cerr << resonant::summary_json(result.summary);
  } else {
    const auto paths = resonant::write_scan(result, cfg.format, cfg.output);
    std::cerr << "wrote " << paths.curve.string() << ", " << paths.slopes.string() << ", "
              << paths.summary.string() << '\n';
  }
  if (!result.summary.converged) {
    std::cerr << "warning: " << result.summary.flagged_points
              << " point(s) flagged; results are partial\n";
    return kNonConvergence;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Screened resonance interaction energies between two identical atoms"};
  app.require_subcommand(1);

  CommonOptions scan_opts, modes_opts, media_opts, compare_opts;
  auto* scan = app.add_subcommand("scan", "Energy curve, slope profile and summary over a rho grid");
  auto* modes = app.add_subcommand("modes", "Coupled-mode frequencies over a rho grid");
  auto* media = app.add_subcommand("media-report", "Debye length and frequency scales of the electrolyte");
  auto* compare = app.add_subcommand("compare-asymptotes", "Exact curve against both asymptotes");
  add_common(scan, scan_opts);
  add_common(modes, modes_opts);
  add_common(media, media_opts);
  add_common(compare, compare_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*scan) return run_scan_command(scan_opts);
    if (*modes) {
      const auto cfg = load(modes_opts);
      write_text(resonant::modes_table(cfg), cfg.output);
    } else if (*media) {
      const auto cfg = load(media_opts);
      write_text(resonant::media_report(cfg), media_opts.out);
    } else if (*compare) {
      const auto cfg = load(compare_opts);
      write_text(resonant::compare_asymptotes(cfg), cfg.output);
    }
    return kOk;
  } catch (const resonant::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const resonant::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const resonant::ConvergenceError& e) {
    std::cerr << "not converged: " << e.what() << " (best estimate " << e.best_estimate() << ")\n";
    return kNonConvergence;
  } catch (const resonant::DivergenceError& e) {
    std::cerr << "not converged: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const resonant::StrongCouplingError& e) {
    std::cerr << "not converged: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const resonant::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
}
