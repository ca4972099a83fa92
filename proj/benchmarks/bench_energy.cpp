#include <benchmark/benchmark.h>

#include <filesystem>

#include "resonant/config.hpp"
#include "resonant/constants.hpp"
#include "resonant/resonance.hpp"
#include "resonant/scan.hpp"

using namespace resonant;

namespace {

const MediumModel kWater = MediumModel::davies_ninham(1.77, 2e12, 2e12, 78.5);
const OscillatorPolarizability kAtom = OscillatorPolarizability::from_static(1e-23, 1.5e16);

}  // namespace

static void BM_ZeroTPoint(benchmark::State& state) {
  const double rho = static_cast<double>(state.range(0)) * 1e-7;
  QuadratureSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(zero_T_energy(rho, kAtom, kWater, spec).value);
}
BENCHMARK(BM_ZeroTPoint)->Arg(1)->Arg(1000)->Arg(1000000);

static void BM_FiniteTPoint(benchmark::State& state) {
  ElectrolyteParams salt;
  salt.concentration = constants::molar_to_per_cm3(1e-3);
  salt.eps_static = 78.5;
  const auto medium = MediumModel::constant(1.77, 78.5);
  MatsubaraOptions opts;
  opts.tail = static_cast<TailMode>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(finite_T_energy(1e-6, kAtom, medium, salt, opts).total);
}
BENCHMARK(BM_FiniteTPoint)->Arg(static_cast<int>(TailMode::integral))->Arg(static_cast<int>(TailMode::geometric));

static void BM_DaviesNinhamScan(benchmark::State& state) {
  auto cfg = load_run_config(std::filesystem::path(RESONANT_SOURCE_DIR) / "configs" / "electrolyte_zero_T.ini");
  cfg.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_scan(cfg).summary.points);
}
BENCHMARK(BM_DaviesNinhamScan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
