#include "resonant/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <tuple>
#include <vector>

#include "resonant/constants.hpp"
#include "resonant/errors.hpp"

namespace resonant {

namespace {

// 15-point Kronrod abscissae with the embedded 7-point Gauss rule (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEpsilon = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

// Running sum with Neumaier compensation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

template <class F>
Segment gauss_kronrod_15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double result_gauss = fc * kWg[3];
  double result_kronrod = fc * kWgk[7];
  double result_abs = std::abs(result_kronrod);
  std::array<double, 7> fv1{};
  std::array<double, 7> fv2{};

  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    result_kronrod += kWgk[j] * (f1 + f2);
    result_abs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) result_gauss += kWg[j / 2] * (f1 + f2);
  }

  const double mean = 0.5 * result_kronrod;
  double result_asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    result_asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }

  const double value = result_kronrod * half;
  result_abs *= std::abs(half);
  result_asc *= std::abs(half);
  double error = std::abs((result_kronrod - result_gauss) * half);
  if (result_asc != 0.0 && error != 0.0) {
    error = result_asc * std::min(1.0, std::pow(200.0 * error / result_asc, 1.5));
  }
  if (result_abs > kTiny / (50.0 * kEpsilon)) {
    error = std::max(50.0 * kEpsilon * result_abs, error);
  }
  return Segment{a, b, value, error};
}

// Global adaptive bisection over the given initial breakpoints of a finite interval.
template <class F>
QuadratureResult adaptive(const F& f, const std::vector<double>& breaks,
                          const QuadratureSpec& spec) {
  std::priority_queue<Segment> queue;
  int evaluations = 0;
  std::vector<Segment> settled;

  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Segment s = gauss_kronrod_15(f, breaks[i], breaks[i + 1]);
    evaluations += 15;
    queue.push(s);
  }

  auto sum_up = [&]() {
    CompensatedSum value;
    double error = 0.0;
    // Segment order in a priority queue is deterministic for identical inputs.
    auto copy = queue;
    while (!copy.empty()) {
      value.add(copy.top().value);
      error += copy.top().error;
      copy.pop();
    }
    for (const auto& s : settled) {
      value.add(s.value);
      error += s.error;
    }
    return std::pair{value.value(), error};
  };

  auto [value, error] = sum_up();
  while (!queue.empty()) {
    const double target = std::max(spec.abs_floor, spec.rel_tol * std::abs(value));
    if (error <= target) break;
    if (evaluations + 30 > spec.max_evals) {
      std::ostringstream msg;
      msg << "quadrature did not reach rel_tol " << spec.rel_tol << " within "
          << spec.max_evals << " evaluations (estimate " << value << " +/- " << error << ")";
      throw ConvergenceError(msg.str(), value, error);
    }
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        std::abs(worst.b - worst.a) <= 1e3 * kEpsilon * std::max(std::abs(mid), kTiny)) {
      // Cannot be split further in double precision.
      settled.push_back(worst);
      if (queue.empty()) break;
      continue;
    }
    Segment left = gauss_kronrod_15(f, worst.a, mid);
    Segment right = gauss_kronrod_15(f, mid, worst.b);
    evaluations += 30;
    const double delta_value = left.value + right.value - worst.value;
    const double delta_error = left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    value += delta_value;
    error += delta_error;
    if (queue.size() % 64 == 0) std::tie(value, error) = sum_up();
  }
  std::tie(value, error) = sum_up();

  QuadratureResult r;
  r.value = value;
  r.error = error;
  r.evaluations = evaluations;
  r.intervals = static_cast<int>(queue.size() + settled.size());
  return r;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) {
    throw DomainError("rel_tol must lie in (0, 1e-2]");
  }
  if (max_evals < 64) throw DomainError("max_evals must be >= 64");
  if (!(abs_floor >= 0.0)) throw DomainError("abs_floor must be >= 0");
}

QuadratureResult integrate_semi_infinite(const Integrand& f, const QuadratureSpec& spec,
                                         double scale) {
  spec.validate();
  if (spec.transform == Transform::none) scale = 1.0;
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("integration scale must be a finite value > 0");
  }

  // u = t / (1 - t) maps (0, inf) onto (0, 1); xi = scale * u.
  auto mapped = [&](double t) {
    const double one_minus = 1.0 - t;
    if (!(one_minus > 0.0)) return 0.0;
    const double u = t / one_minus;
    const double value = f(scale * u);
    if (value == 0.0) return 0.0;
    return value * scale / (one_minus * one_minus);
  };

  // Initial breakpoints at u = 0, 1/8, 1/2, 1, 2, 5, 15, 50, 200, inf.
  static const std::vector<double> breaks = [] {
    std::vector<double> t{0.0};
    for (double u : {0.125, 0.5, 1.0, 2.0, 5.0, 15.0, 50.0, 200.0}) t.push_back(u / (1.0 + u));
    t.push_back(1.0);
    return t;
  }();
  return adaptive(mapped, breaks, spec);
}

QuadratureResult integrate_interval(const Integrand& f, double a, double b,
                                    const QuadratureSpec& spec) {
  spec.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("interval must be finite");
  if (a == b) return {};
  if (b < a) {
    QuadratureResult r = integrate_interval(f, b, a, spec);
    r.value = -r.value;
    return r;
  }
  std::vector<double> breaks;
  for (int i = 0; i <= 8; ++i) breaks.push_back(a + (b - a) * i / 8.0);
  breaks.back() = b;
  auto g = [&](double x) { return f(x); };
  return adaptive(g, breaks, spec);
}

std::string_view to_string(TailMode mode) {
  switch (mode) {
    case TailMode::none: return "none";
    case TailMode::geometric: return "geometric";
    case TailMode::integral: return "integral";
  }
  return "unknown";
}

double MatsubaraGrid::spacing() const {
  return 2.0 * constants::pi * constants::k_boltzmann * temperature / constants::hbar;
}

void MatsubaraGrid::validate() const {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("Matsubara temperature must be > 0");
  }
  if (n_max_cap < 1) throw DomainError("n_max_cap must be >= 1");
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) throw DomainError("rel_tol must lie in (0, 1e-2]");
}

MatsubaraGrid MatsubaraGrid::for_separation(double temperature, double rho,
                                            double light_speed, std::size_t n_max_cap,
                                            TailMode tail) {
  MatsubaraGrid grid;
  grid.temperature = temperature;
  grid.n_max_cap = n_max_cap;
  grid.tail = tail;
  grid.validate();
  if (!(rho > 0.0)) throw DomainError("separation rho must be > 0");
  const double scale = light_speed / rho;
  const double wanted = std::ceil(50.0 * scale / grid.spacing());
  grid.n_max = wanted >= static_cast<double>(n_max_cap) ? n_max_cap
                                                        : std::max<std::size_t>(
                                                              1, static_cast<std::size_t>(wanted));
  grid.decay_scale = scale;
  return grid;
}

MatsubaraResult matsubara_sum(const MatsubaraTerm& term, const MatsubaraGrid& grid) {
  grid.validate();
  const double h = grid.spacing();
  std::size_t n_max = std::clamp<std::size_t>(grid.n_max, 1, grid.n_max_cap);

  CompensatedSum sum;
  sum.add(0.5 * term(0, 0.0));
  double last = 0.0;
  double previous = 0.0;
  double at_half = 0.0;
  std::size_t n = 0;

  auto small_enough = [&](double t, double s) {
    return std::abs(t) < grid.rel_tol * std::abs(s) || (t == 0.0 && s == 0.0);
  };

  bool converged = false;
  for (;;) {
    const std::size_t half_index = std::max<std::size_t>(1, n_max / 2);
    for (++n; n <= n_max; ++n) {
      previous = last;
      last = term(n, h * static_cast<double>(n));
      if (n == half_index) at_half = last;
      sum.add(last);
    }
    n = n_max;
    converged = small_enough(last, sum.value());
    if (converged || n_max >= grid.n_max_cap) break;
    at_half = last;
    n_max = std::min(grid.n_max_cap, 2 * n_max);
  }

  MatsubaraResult result;
  result.terms = n;
  result.last_term = last;
  result.converged = converged;

  if (grid.tail == TailMode::integral) {
    // sum_{k > N} g(xi_k) = (1/h) int_{xi_N}^inf g - g(xi_N)/2 - (h/12) g'(xi_N) + O(h^3 g''')
    const double xi_n = h * static_cast<double>(n);
    const double next = term(n + 1, h * static_cast<double>(n + 1));
    const double slope = n >= 2 ? (next - previous) / (2.0 * h) : (next - last) / h;
    QuadratureSpec spec;
    spec.rel_tol = std::min(1e-2, std::max(grid.rel_tol, 1e-13));
    const double scale = grid.decay_scale > 0.0 ? grid.decay_scale : std::max(xi_n, h);
    auto shifted = [&](double x) { return term(n, xi_n + x); };
    const QuadratureResult tail_integral = integrate_semi_infinite(shifted, spec, scale);
    result.tail = tail_integral.value / h - 0.5 * last - (h / 12.0) * slope;
    result.converged = true;
  } else if (!converged) {
    if (std::abs(last) > std::abs(at_half)) {
      std::ostringstream msg;
      msg << "Matsubara terms are not decaying: |term(" << n << ")| = " << std::abs(last)
          << " > |term(" << n / 2 << ")| = " << std::abs(at_half);
      throw DivergenceError(msg.str());
    }
    if (grid.tail == TailMode::geometric && previous != 0.0) {
      const double ratio = last / previous;
      if (ratio > 0.0 && ratio < 1.0) result.tail = last * ratio / (1.0 - ratio);
    }
  } else if (grid.tail == TailMode::geometric && previous != 0.0) {
    const double ratio = last / previous;
    if (ratio > 0.0 && ratio < 1.0) result.tail = last * ratio / (1.0 - ratio);
  }

  result.value = sum.value() + result.tail;
  return result;
}

}  // namespace resonant
