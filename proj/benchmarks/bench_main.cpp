#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "vlasov1d/diagnostics.hpp"
#include "vlasov1d/field_solver.hpp"
#include "vlasov1d/scenario.hpp"
#include "vlasov1d/transport.hpp"
#include "vlasov1d/verify.hpp"

namespace {

using namespace vlasov1d;

TwoSpeciesState reference_state(int n) {
  ScenarioConfig c = verify::reference_config(Model::Relativistic);
  c.grid.n_x = n;
  c.grid.n_v = n;
  c.grid.x_min = -12.0;
  c.grid.x_max = 12.0;
  return build_initial(c, scenario_grid(c));
}

void BM_InterpolateLine(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> line(n), out(n), scratch;
  for (int i = 0; i < n; ++i) line[i] = std::exp(-0.001 * (i - n / 2) * (i - n / 2));
  for (auto _ : state) {
    interpolate_line(line, 0.37, out, scratch);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_InterpolateLine)->RangeMultiplier(4)->Range(64, 4096);

void BM_StrangStep(benchmark::State& state) {
  const TwoSpeciesState s = reference_state(static_cast<int>(state.range(0)));
  const Executor executor(static_cast<int>(state.range(1)));
  TransportOptions options;
  options.executor = &executor;
  for (auto _ : state) {
    TwoSpeciesState next = strang_step(s, 0.01, options);
    benchmark::DoNotOptimize(next.f.values().data());
  }
  state.SetItemsProcessed(state.iterations() * 2 * static_cast<long>(s.grid().cells()));
}
BENCHMARK(BM_StrangStep)->Args({128, 1})->Args({256, 1})->Args({256, 4})->Args({512, 4})
    ->Unit(benchmark::kMillisecond);

void BM_FieldSolve(benchmark::State& state) {
  const TwoSpeciesState s = reference_state(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    FieldArrays fa = solve_fields(s);
    benchmark::DoNotOptimize(fa.E.data());
  }
}
BENCHMARK(BM_FieldSolve)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMicrosecond);

void BM_SampleRow(benchmark::State& state) {
  const TwoSpeciesState s = reference_state(static_cast<int>(state.range(0)));
  const DiagConfig config;
  for (auto _ : state) {
    DiagRow row = sample_row(s, config);
    benchmark::DoNotOptimize(row.M);
  }
}
BENCHMARK(BM_SampleRow)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
