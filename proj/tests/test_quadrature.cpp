#include <gtest/gtest.h>

#include <cmath>

#include "resonant/constants.hpp"
#include "resonant/errors.hpp"
#include "resonant/quadrature.hpp"

using namespace resonant;

TEST(Quadrature, GammaKernels) {
  QuadratureSpec spec;
  const auto q2 = integrate_semi_infinite([](double x) { return x * x * std::exp(-x); }, spec);
  EXPECT_NEAR(q2.value, 2.0, 2e-10);
  const auto q5 = integrate_semi_infinite([](double x) { return std::pow(x, 5) * std::exp(-x); }, spec);
  EXPECT_NEAR(q5.value, 120.0, 120.0 * 1e-10);
  EXPECT_GT(q5.evaluations, 0);
}

TEST(Quadrature, ScaleArgumentHandlesPhysicalFrequencies) {
  QuadratureSpec spec;
  const double omega = 3e17;
  auto f = [&](double xi) { return xi * xi * std::exp(-xi / omega); };
  const auto q = integrate_semi_infinite(f, spec, omega);
  const double exact = 2.0 * std::pow(omega, 3);
  EXPECT_NEAR(q.value, exact, 1e-10 * exact);
}

TEST(Quadrature, AlgebraicDecay) {
  QuadratureSpec spec;
  const auto q = integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x * x); }, spec);
  EXPECT_NEAR(q.value, M_PI / 2.0, 1e-9);
}

TEST(Quadrature, FiniteInterval) {
  QuadratureSpec spec;
  const auto q = integrate_interval([](double x) { return std::sin(x); }, 0.0, M_PI, spec);
  EXPECT_NEAR(q.value, 2.0, 1e-12);
  const auto r = integrate_interval([](double x) { return std::sin(x); }, M_PI, 0.0, spec);
  EXPECT_NEAR(r.value, -2.0, 1e-12);
}

TEST(Quadrature, ConvergenceErrorCarriesBestEstimate) {
  QuadratureSpec spec;
  spec.rel_tol = 1e-14;
  spec.max_evals = 64;
  auto f = [](double x) { return std::cos(300.0 * x) * std::exp(-x); };
  try {
    integrate_semi_infinite(f, spec);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_TRUE(std::isfinite(e.best_estimate()));
    EXPECT_GT(e.error_estimate(), 0.0);
  }
}

TEST(Quadrature, SpecValidation) {
  QuadratureSpec spec;
  spec.rel_tol = 0.0;
  EXPECT_THROW(integrate_semi_infinite([](double) { return 0.0; }, spec), DomainError);
  spec.rel_tol = 0.1;
  EXPECT_THROW(spec.validate(), DomainError);
  spec.rel_tol = 1e-8;
  spec.max_evals = 10;
  EXPECT_THROW(spec.validate(), DomainError);
}

TEST(Matsubara, SpacingIsFirstMatsubaraFrequency) {
  MatsubaraGrid grid;
  grid.temperature = 300.0;
  EXPECT_NEAR(grid.spacing(), 2.0 * M_PI * constants::k_boltzmann * 300.0 / constants::hbar, 1.0);
  EXPECT_EQ(grid.xi(3), 3.0 * grid.spacing());
}

TEST(Matsubara, PrimedSumMatchesClosedForm) {
  // h sum' exp(-n h / W) = (h/2) coth(h / 2W).
  MatsubaraGrid grid;
  grid.temperature = 300.0;
  grid.n_max = 8;
  grid.n_max_cap = 100000;
  grid.rel_tol = 1e-15;
  const double h = grid.spacing();
  const double w = 7.3 * h;
  auto term = [&](std::size_t, double xi) { return std::exp(-xi / w); };
  const auto r = matsubara_sum(term, grid);
  const double exact = 0.5 / std::tanh(h / (2.0 * w));
  EXPECT_NEAR(r.value, exact, 1e-13 * exact);
  EXPECT_TRUE(r.converged);
  EXPECT_GT(r.terms, 8u);
}

TEST(Matsubara, IntegralTailRecoversTruncatedSum) {
  MatsubaraGrid grid;
  grid.temperature = 300.0;
  const double h = grid.spacing();
  const double w = 40.0 * h;
  grid.n_max = 20;
  grid.n_max_cap = 20;
  grid.tail = TailMode::integral;
  grid.decay_scale = w;
  auto term = [&](std::size_t, double xi) { return std::exp(-xi / w); };
  const auto r = matsubara_sum(term, grid);
  const double exact = 0.5 / std::tanh(h / (2.0 * w));
  EXPECT_EQ(r.terms, 20u);
  EXPECT_NE(r.tail, 0.0);
  EXPECT_NEAR(r.value, exact, 1e-6 * exact);
  EXPECT_TRUE(r.converged);
}

TEST(Matsubara, GeometricTailIsExactForGeometricTerms) {
  MatsubaraGrid grid;
  grid.temperature = 10.0;
  grid.n_max = 10;
  grid.n_max_cap = 10;
  grid.tail = TailMode::geometric;
  auto term = [](std::size_t n, double) { return std::pow(0.5, static_cast<double>(n)); };
  const auto r = matsubara_sum(term, grid);
  EXPECT_NEAR(r.value, 0.5 + 1.0, 1e-14);
  EXPECT_FALSE(r.converged);
}

TEST(Matsubara, GrowingTermsDiverge) {
  MatsubaraGrid grid;
  grid.temperature = 10.0;
  grid.n_max = 4;
  grid.n_max_cap = 16;
  auto term = [](std::size_t n, double) { return static_cast<double>(n); };
  EXPECT_THROW(matsubara_sum(term, grid), DivergenceError);
}

TEST(Matsubara, GridForSeparation) {
  const auto grid = MatsubaraGrid::for_separation(300.0, 1e-5, constants::c0);
  const double expected = std::ceil(50.0 * constants::c0 / 1e-5 / grid.spacing());
  EXPECT_EQ(grid.n_max, static_cast<std::size_t>(expected));
  EXPECT_EQ(grid.decay_scale, constants::c0 / 1e-5);
  const auto capped = MatsubaraGrid::for_separation(1.0, 1e-7, constants::c0, 1000);
  EXPECT_EQ(capped.n_max, 1000u);
  EXPECT_THROW(MatsubaraGrid::for_separation(0.0, 1e-7, constants::c0), DomainError);
}
