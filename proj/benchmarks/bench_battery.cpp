#include <benchmark/benchmark.h>

#include <vector>

#include "photonstat/criteria.hpp"
#include "photonstat/generators.hpp"
#include "photonstat/oracle.hpp"
#include "photonstat/transforms.hpp"

using namespace photonstat;

static void BM_BatterySchiller(benchmark::State& state) {
  const auto q = MomentSequence::from_values(
      std::vector<double>{0.44, 0.07, 0.26, 0.30, 1.44, 3.60, 28.80});
  const auto dist = q_to_p(q, NormPolicy::kTruncated);
  for (auto _ : state) {
    auto report = run_battery(dist);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_BatterySchiller);

static void BM_BatteryFig1(benchmark::State& state) {
  const auto dist = coherent_mixture(fig1_mixture(), 200);
  for (auto _ : state) {
    auto report = run_battery(dist);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_BatteryFig1)->Unit(benchmark::kMillisecond);

static void BM_HankelPsd(benchmark::State& state) {
  const auto q = p_to_q(coherent_mixture(fig1_mixture(), 200));
  const int order = static_cast<int>(state.range(0));
  const auto pair = build_hankel(q, order);
  for (auto _ : state) {
    auto report = test_hankel_psd(pair);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_HankelPsd)->Arg(10)->Arg(25)->Arg(50);

static void BM_ThermalQuadrature(benchmark::State& state) {
  const auto radial = radial_of_thermal(2.0);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto moments = quadrature_moments(radial, order, true);
    benchmark::DoNotOptimize(moments);
  }
}
BENCHMARK(BM_ThermalQuadrature)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
