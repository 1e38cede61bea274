// Field kernel throughput: serial direct sum vs the separable evaluator.

#include <benchmark/benchmark.h>

#include <random>

#include "risbench/field_kernels.hpp"
#include "risbench/io.hpp"
#include "risbench/optimizer.hpp"

using namespace risbench;

namespace {

ConfigMatrix random_config(const SurfaceSpec& s, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(s.cell.states.size()) - 1);
  ConfigMatrix c(s.rows, s.cols, 0);
  for (int m = 0; m < s.rows; ++m)
    for (int n = 0; n < s.cols; ++n) c.at(m, n) = pick(rng);
  return c;
}

void BM_Reference(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const SurfaceSpec s = build_surface(load_unit_cell("S4"), side, side, 1).surface;
  const ConfigMatrix c = random_config(s, 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::evaluate_reference(s, c, SourceModel::planewave(), {}));
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_Reference)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Evaluator(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const SurfaceSpec s = build_surface(load_unit_cell("S4"), side, side, 1).surface;
  const FieldEvaluator ev(s, SourceModel::planewave(), {});
  const ConfigMatrix c = random_config(s, 1);
  FieldWorkspace ws;
  std::vector<cplx> out;
  for (auto _ : state) {
    ev.evaluate(c, ws, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_Evaluator)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Fitness(benchmark::State& state) {
  const SurfaceSpec s = build_surface(load_unit_cell("S4"), 40, 40, 1).surface;
  const FieldGrid target = ideal_target_field(load_benchmark("B1"), {}, s.wavelength_m());
  const ConfigMatrix c = random_config(s, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fitness(c, target, s, SourceModel::planewave()));
}
BENCHMARK(BM_Fitness)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
