// Serial reference vs blocked OpenMP kernels, plus the Monte Carlo replicate driver.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "seqroc/kernels.hpp"
#include "seqroc/seqtest.hpp"

namespace {

std::vector<double> scores(std::size_t n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> z;
  std::vector<double> out(n);
  for (auto& v : out) v = z(rng);
  return out;
}

void BM_DensitySerial(benchmark::State& st) {
  const auto s = scores(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(seqroc::kernels::serial::kernel_density_sum(s, 0.3, 0.2));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_DensityParallel(benchmark::State& st) {
  const auto s = scores(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(seqroc::kernels::kernel_density_sum(s, 0.3, 0.2));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_ExceedanceSerial(benchmark::State& st) {
  const auto s = scores(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(seqroc::kernels::serial::smoothed_exceedance_sum(s, 0.3, 0.2));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_ExceedanceParallel(benchmark::State& st) {
  const auto s = scores(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(seqroc::kernels::smoothed_exceedance_sum(s, 0.3, 0.2));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

BENCHMARK(BM_DensitySerial)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_DensityParallel)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_ExceedanceSerial)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_ExceedanceParallel)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18);

// Replicate driver: 1 worker vs the runtime default.
void BM_TallyDesigns(benchmark::State& st) {
  const auto scenario = seqroc::misspecified_scenario(1.0, 1.5, 200, 200);
  seqroc::TestConfig test;
  test.new_marker_columns = {1};
  test.boundaries = seqroc::solve_boundaries(0.05, 0.5, seqroc::Spending::obf, seqroc::Stopping::both);
  const std::vector<seqroc::BoundarySet> designs{test.boundaries};
  for (auto _ : st)
    benchmark::DoNotOptimize(
        seqroc::tally_designs(scenario, test, designs, 16, 3, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_TallyDesigns)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
