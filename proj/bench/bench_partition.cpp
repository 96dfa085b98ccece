#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "mixfrac/kernels.hpp"
#include "mixfrac/measure.hpp"
#include "mixfrac/partition.hpp"

using namespace mixfrac;

namespace {

struct Columns {
  std::vector<double> offset, slope;
  explicit Columns(std::size_t n) : offset(n), slope(n) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> o(-50.0, 0.0), s(-20.0, -0.5);
    for (std::size_t i = 0; i < n; ++i) offset[i] = o(rng), slope[i] = s(rng);
  }
};

void BM_AffineLseSerial(benchmark::State& state) {
  const Columns c(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::affine_lse_serial(c.offset, c.slope, 0.3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_AffineLseParallel(benchmark::State& state) {
  const Columns c(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::affine_lse(c.offset, c.slope, 0.3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SolveTStar(benchmark::State& state) {
  const CascadeSpec spec{2, 1, static_cast<int>(state.range(0)), {{0.25, 0.75}, {0.7, 0.3}, {0.5, 0.5}}, false};
  const PartitionEngine engine(build_cascade(spec));
  const QVector q{1.5, -0.5};
  for (auto _ : state) benchmark::DoNotOptimize(engine.solve_t_star(q, spec.levels));
}

}  // namespace

BENCHMARK(BM_AffineLseSerial)->RangeMultiplier(8)->Range(1 << 10, 1 << 22);
BENCHMARK(BM_AffineLseParallel)->RangeMultiplier(8)->Range(1 << 10, 1 << 22);
BENCHMARK(BM_SolveTStar)->DenseRange(12, 20, 4);

BENCHMARK_MAIN();
