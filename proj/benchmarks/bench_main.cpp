#include "jumpdens/bandwidth.hpp"
#include "jumpdens/estim.hpp"
#include "jumpdens/simulate.hpp"
#include "jumpdens/specfun.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace jumpdens;

Sample
gamma_sample(std::size_t n)
{
  TargetDist dist;
  Rng rng(11, 0);
  return sample_discontinuous(dist, dist.quantile(0.3), 0.0, n, rng);
}

void
BM_RegGamma(benchmark::State& state)
{
  const double a = static_cast<double>(state.range(0));
  double z = 0.5 * a;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::reg_gamma(a, z));
    z = z < 1.5 * a ? z * 1.0001 : 0.5 * a;
  }
}
BENCHMARK(BM_RegGamma)->Arg(3)->Arg(30)->Arg(3000)->Arg(300000);

void
BM_InvRegLowerGamma(benchmark::State& state)
{
  double p = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::inv_reg_lower_gamma(2.75, p));
    p = p < 0.98 ? p + 0.0137 : 0.01;
  }
}
BENCHMARK(BM_InvRegLowerGamma);

void
BM_JumpTest(benchmark::State& state)
{
  const Sample sample = gamma_sample(static_cast<std::size_t>(state.range(0)));
  const double c = TargetDist{}.quantile(0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(jump_test(sample, c, 0.03, 0.81, VarianceVariant::v2, 0.05));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_JumpTest)->Arg(500)->Arg(2000)->Arg(20000);

void
BM_SelectBandwidth(benchmark::State& state)
{
  const Sample sample = gamma_sample(static_cast<std::size_t>(state.range(0)));
  const double c = TargetDist{}.quantile(0.3);
  const BandwidthConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_bandwidth(sample, c, cfg));
  }
}
BENCHMARK(BM_SelectBandwidth)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void
BM_SampleDiscontinuous(benchmark::State& state)
{
  const TargetDist dist;
  const double c = dist.quantile(0.3);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    Rng rng(5, rep++);
    benchmark::DoNotOptimize(sample_discontinuous(dist, c, 0.04, 2000, rng));
  }
}
BENCHMARK(BM_SampleDiscontinuous)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
