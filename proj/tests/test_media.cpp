#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "resonant/constants.hpp"
#include "resonant/errors.hpp"
#include "resonant/media.hpp"

using namespace resonant;

namespace {

// SI reference values, independent of the Gaussian constants used by the library.
constexpr double kE_SI = 1.602176634e-19;
constexpr double kEps0_SI = 8.8541878128e-12;
constexpr double kKb_SI = 1.380649e-23;
constexpr double kHbar_SI = 1.054571817e-34;
constexpr double kNa = 6.02214076e23;

ElectrolyteParams salt(double molar, double temperature, double eps) {
  ElectrolyteParams p;
  p.concentration = constants::molar_to_per_cm3(molar);
  p.temperature = temperature;
  p.eps_static = eps;
  return p;
}

}  // namespace

TEST(Media, VacuumAndConstant) {
  EXPECT_EQ(eval_epsilon(MediumModel::vacuum(), 1e15), 1.0);
  const auto water = MediumModel::constant(1.77, 78.5);
  EXPECT_EQ(eval_epsilon(water, 3e14), 1.77);
  EXPECT_EQ(water.eps_static(), 78.5);
  EXPECT_DOUBLE_EQ(medium_light_speed(water, 1e15), constants::c0 / std::sqrt(1.77));
  EXPECT_THROW(MediumModel::constant(0.5), DomainError);
  EXPECT_THROW(eval_epsilon(water, -1.0), DomainError);
}

TEST(Media, DaviesNinhamForm) {
  const auto m = MediumModel::davies_ninham(1.77, 2e12, 5e11, 78.5);
  for (double xi : {1e9, 1e11, 2e12, 1e14, 1e17}) {
    const double expected = 1.77 * (1.0 + 4e24 / (xi * (xi + 5e11)));
    EXPECT_NEAR(eval_epsilon(m, xi), expected, 1e-14 * expected) << xi;
  }
  EXPECT_THROW(eval_epsilon(m, 0.0), DomainError);
  EXPECT_THROW(MediumModel::davies_ninham(1.77, -1.0, 1.0, 78.5), DomainError);
  EXPECT_THROW(MediumModel::davies_ninham(1.77, 1.0, 0.0, 78.5), DomainError);
}

TEST(Media, DaviesNinhamReducesToBackgroundAtHighFrequency) {
  const auto m = MediumModel::davies_ninham(1.77, 2e12, 2e12, 78.5);
  EXPECT_NEAR(eval_epsilon(m, 1e20), 1.77, 1e-14);
}

TEST(Media, TabulatedInterpolatesLogLog) {
  // eps = 1e3 xi^-0.1 is a straight line in log-log, so interpolation is exact.
  std::vector<DielectricSample> table;
  for (double xi = 1e10; xi <= 1e16; xi *= 10.0) table.push_back({xi, 1e3 * std::pow(xi, -0.1)});
  const auto m = MediumModel::tabulated(table, 80.0);
  for (double xi : {1e10, 3.3e11, 7e13, 1e16}) {
    const double expected = 1e3 * std::pow(xi, -0.1);
    EXPECT_NEAR(eval_epsilon(m, xi), expected, 1e-12 * expected);
  }
  EXPECT_THROW(eval_epsilon(m, 9e9), ExtrapolationError);
  EXPECT_THROW(eval_epsilon(m, 1.1e16), ExtrapolationError);
  EXPECT_DOUBLE_EQ(m.eps_background(), table.back().eps);
}

TEST(Media, TabulatedRejectsBadTables) {
  EXPECT_THROW(MediumModel::tabulated({{2.0, 3.0}, {1.0, 2.0}}, 80.0), DomainError);
  EXPECT_THROW(MediumModel::tabulated({{1.0, 2.0}, {2.0, 3.0}}, 80.0), DomainError);
  EXPECT_THROW(MediumModel::tabulated({{1.0, 2.0}, {2.0, 0.5}}, 80.0), DomainError);
  EXPECT_THROW(MediumModel::tabulated({}, 80.0), DomainError);
}

TEST(Media, ReadTableReportsLine) {
  const auto path = std::filesystem::temp_directory_path() / "resonant_bad_table.dat";
  {
    std::ofstream f(path);
    f << "# xi eps\n1e12 2.0\n\n1e13 oops\n";
  }
  try {
    read_dielectric_table(path);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 4);
  }
  std::filesystem::remove(path);
  EXPECT_THROW(read_dielectric_table("/nonexistent/table.dat"), IoError);
}

TEST(Media, ShippedWaterTableLoads) {
  const auto table = read_dielectric_table(std::filesystem::path(RESONANT_SOURCE_DIR) / "data" /
                                           "water_uv_oscillator.dat");
  ASSERT_GT(table.size(), 10u);
  const auto m = MediumModel::tabulated(table, 78.5);
  EXPECT_NEAR(eval_epsilon(m, 1e12), 1.755, 1e-6);
}

TEST(Media, DebyeLengthMatchesSIOracle) {
  // kappa^2 = 2 N e^2 / (eps eps0 kB T) in SI for a 1:1 salt with N ions of each species.
  const double molar = 0.1, temperature = 298.0, eps = 78.5;
  const double n_si = molar * 1000.0 * kNa;
  const double kappa_si = std::sqrt(2.0 * n_si * kE_SI * kE_SI / (eps * kEps0_SI * kKb_SI * temperature));
  const double lambda_nm = 1e9 / kappa_si;

  const double lambda = debye_length(salt(molar, temperature, eps)) / constants::cm_per_nm;
  EXPECT_NEAR(lambda, lambda_nm, 1e-7 * lambda_nm);
  EXPECT_NEAR(lambda, 0.96, 0.02 * 0.96);
}

TEST(Media, DebyeScalesAsInverseRootConcentration) {
  const double l1 = debye_length(salt(0.1, 298.0, 78.5));
  const double l2 = debye_length(salt(0.025, 298.0, 78.5));
  EXPECT_NEAR(l2 / l1, 2.0, 1e-12);
  EXPECT_TRUE(std::isinf(debye_length(salt(0.0, 298.0, 78.5))));
  EXPECT_EQ(debye_kappa(salt(0.0, 298.0, 78.5)), 0.0);
}

TEST(Media, ElectrolyteValidation) {
  EXPECT_THROW(debye_kappa(salt(-1.0, 298.0, 78.5)), DomainError);
  EXPECT_THROW(debye_kappa(salt(0.1, 0.0, 78.5)), DomainError);
  EXPECT_THROW(debye_kappa(salt(0.1, 298.0, 0.5)), DomainError);
}

TEST(Media, FrequencyScalesMatchSIOracle) {
  const auto report = frequency_scale_report(salt(0.1, 300.0, 78.5));
  const double xi1 = 2.0 * M_PI * kKb_SI * 300.0 / kHbar_SI;
  EXPECT_NEAR(report.xi_1, xi1, 1e-9 * xi1);
  EXPECT_NEAR(report.xi_1, 2.47e14, 0.01 * 2.47e14);

  const double n_si = 0.1 * 1000.0 * kNa;
  const double mass = 22.98976928 * 1.66053906660e-27;
  const double wp = std::sqrt(n_si * kE_SI * kE_SI / (kEps0_SI * mass));
  EXPECT_NEAR(report.omega_plasma_ionic, wp, 1e-7 * wp);
  EXPECT_GT(report.omega_plasma_ionic, 1e12);
  EXPECT_LT(report.omega_plasma_ionic, 1e13);
  EXPECT_NEAR(report.ratio, report.omega_plasma_ionic / report.xi_1, 1e-15);
}
