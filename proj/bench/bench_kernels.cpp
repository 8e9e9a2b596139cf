// Serial reference vs OpenMP kernels: the momentum-space oracle (per-mode
// integrals) and the sphere mode sum (per-l integrals).

#include <benchmark/benchmark.h>

#include "casimir/plates_oracle.hpp"
#include "casimir/sphere.hpp"

namespace {

using namespace casimir;

void BM_Oracle(benchmark::State& state, Exec exec, double rapidity) {
  const auto g = plate_geometry(1.0);
  const CutoffConfig c = make_cutoff(0.2, 0.5, rapidity);
  OracleSpec spec;
  spec.exec = exec;
  for (auto _ : state) benchmark::DoNotOptimize(stress_oracle(g, c, spec).tensor);
}

void BM_ESigma(benchmark::State& state, Exec exec) {
  SphereConfig c;
  c.sigma = 1.0 / static_cast<double>(state.range(0));
  c.Sigma = c.sigma;
  c.exec = exec;
  for (auto _ : state) benchmark::DoNotOptimize(e_sigma(c, true).value);
  state.counters["l_used"] = static_cast<double>(e_sigma_l_needed(c, true));
}

void BM_ClosedTensor(benchmark::State& state) {
  const auto g = plate_geometry(1.0);
  const CutoffConfig c = make_cutoff(0.01, 0.5, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(stress_closed(g, c, true));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Oracle, rest_serial, Exec::serial, 0.0)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Oracle, rest_parallel, Exec::parallel, 0.0)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Oracle, boosted_serial, Exec::serial, 0.3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Oracle, boosted_parallel, Exec::parallel, 0.3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ESigma, serial, Exec::serial)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ESigma, parallel, Exec::parallel)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosedTensor);

BENCHMARK_MAIN();
