#pragma once

#include <stdexcept>
#include <string>

namespace resonant {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (rho <= 0, xi <= 0 for
/// Davies-Ninham, negative concentration, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Tabulated medium queried outside its sampled frequency range.
class ExtrapolationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Operation called with an incompatible model (e.g. large-rho asymptote on a non
/// Davies-Ninham medium), or mismatched grids.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Numerical engine failed to meet its tolerance. Carries the best estimate so callers
/// can still report a flagged partial result.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

/// Matsubara terms failed to decay.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Coupling alpha0 |T| / omega0^2 too strong for a bracketed real root near omega0.
class StrongCouplingError : public Error {
 public:
  using Error::Error;
};

/// Slope profile never attains one of the requested plateaus.
class RegimeNotReachedError : public Error {
 public:
  RegimeNotReachedError(const std::string& what, double min_slope, double max_slope)
      : Error(what), min_slope_(min_slope), max_slope_(max_slope) {}

  double min_slope() const noexcept { return min_slope_; }
  double max_slope() const noexcept { return max_slope_; }

 private:
  double min_slope_;
  double max_slope_;
};

/// Invalid configuration file or value. line() is 0 when no single line is at fault.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0) : Error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace resonant
