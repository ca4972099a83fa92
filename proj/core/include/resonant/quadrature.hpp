#pragma once

// Numerical engines: adaptive Gauss-Kronrod integration over (0, inf) and primed
// Matsubara summation with controlled truncation.

#include <cstddef>
#include <functional>
#include <string_view>

namespace resonant {

/// exp_substitution: the integrand is evaluated as f(scale * u), u in (0, inf), where
/// `scale` is the e-folding frequency of its exponential factor (xi rho / c = u). The
/// caller provides the scale; with `none` it is ignored and u = xi.
enum class Transform { exp_substitution, none };

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_floor = 0.0;
  int max_evals = 200000;
  Transform transform = Transform::exp_substitution;

  /// rel_tol in (0, 1e-2], max_evals >= 64, abs_floor >= 0.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int evaluations = 0;
  int intervals = 0;
};

using Integrand = std::function<double(double)>;

/// Integral of f over (0, inf). Integrands must be pure: the engine may evaluate them in
/// any order. Throws ConvergenceError (carrying the best estimate) when max_evals is
/// exhausted before the tolerance is met.
QuadratureResult integrate_semi_infinite(const Integrand& f, const QuadratureSpec& spec,
                                         double scale = 1.0);

/// Integral of f over the finite interval [a, b] with the same adaptive engine.
QuadratureResult integrate_interval(const Integrand& f, double a, double b,
                                    const QuadratureSpec& spec);

enum class TailMode {
  none,
  geometric,  // ratio of the last two terms extrapolated as a geometric series
  integral,   // Euler-Maclaurin: remaining terms from the integral of the term function
};

std::string_view to_string(TailMode mode);

/// Discrete imaginary frequencies xi_n = 2 pi n k_B T / hbar.
struct MatsubaraGrid {
  double temperature = 0.0;          // K
  std::size_t n_max = 0;             // initial truncation index
  std::size_t n_max_cap = 1000000;   // truncation never grows beyond this
  TailMode tail = TailMode::none;
  double rel_tol = 1e-10;
  double decay_scale = 0.0;          // e-folding frequency of the terms, for the tail integral

  double spacing() const;            // xi_1, rad/s
  double xi(std::size_t n) const { return spacing() * static_cast<double>(n); }
  void validate() const;

  /// n_max = ceil(50 c / (xi_1 rho)), capped; decay_scale = c / rho.
  static MatsubaraGrid for_separation(double temperature, double rho, double light_speed,
                                      std::size_t n_max_cap = 1000000,
                                      TailMode tail = TailMode::integral);
};

struct MatsubaraResult {
  double value = 0.0;          // (1/2) term(0) + sum_{n >= 1} term(n) (+ tail)
  std::size_t terms = 0;       // highest index summed explicitly
  double last_term = 0.0;
  double tail = 0.0;           // tail estimate included in value
  bool converged = false;      // |last_term| < rel_tol |partial sum| or tail integral used
};

/// term(n, xi_n). For n >= 1 the value must depend on xi alone when the integral tail is
/// used: the tail integrand is evaluated as term(n_max, xi) for xi >= xi_{n_max}.
using MatsubaraTerm = std::function<double(std::size_t, double)>;

/// Primed sum: the n = 0 term is halved. Throws DivergenceError when terms grow
/// (|term(n_max)| > |term(n_max / 2)|) and no tail integral is requested.
MatsubaraResult matsubara_sum(const MatsubaraTerm& term, const MatsubaraGrid& grid);

}  // namespace resonant
