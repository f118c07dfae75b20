#include <benchmark/benchmark.h>

#include "rdfront/bounds.hpp"
#include "rdfront/model.hpp"
#include "rdfront/pdesolver.hpp"
#include "rdfront/selfsimilar.hpp"

using namespace rdfront;

namespace {

// Fixed-step radial solve; reports node updates per second.
void BM_RadialSolve(benchmark::State& state) {
  const double dx = 1.0 / static_cast<double>(state.range(0));
  const ProblemParams p{2.0, 0.5, 1.0, 1.0, 4.0, 1.0, 2};
  const auto geom = Geometry::radial(2, 1.2);
  NumericsConfig num;
  num.dx = dx;
  num.fixed_dt = stable_dt({p.m, p.beta, p.b}, geom, dx, 0.9, 1.0);
  num.t_end = 200.0 * *num.fixed_dt;
  std::int64_t updates = 0;
  for (auto _ : state) {
    const auto tr = solve(p, geom, num);
    updates += tr.steps * static_cast<std::int64_t>(tr.x.size());
    benchmark::DoNotOptimize(tr.fields.back().data());
  }
  state.counters["node_updates/s"] = benchmark::Counter(static_cast<double>(updates),
                                                        benchmark::Counter::kIsRate);
}
BENCHMARK(BM_RadialSolve)->Arg(200)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_ShapePme(benchmark::State& state) {
  ShapeOptions opt;
  opt.dx = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shape_pme(1.0, 1.0, 2.0, opt).interface);
}
BENCHMARK(BM_ShapePme)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ShapeReactionMarch(benchmark::State& state) {
  ShapeOptions opt;
  opt.dx = 1.0 / 100.0;
  opt.force_time_march = true;
  for (auto _ : state) benchmark::DoNotOptimize(shape_reaction(4.0, 1.5, 0.5, 6.0, opt).interface);
}
BENCHMARK(BM_ShapeReactionMarch)->Unit(benchmark::kMillisecond);

void BM_PmeInterfaceOde(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pme_interface_by_ode(1.0, 1.0, 2.0));
}
BENCHMARK(BM_PmeInterfaceOde);

void BM_Classify(benchmark::State& state) {
  const ProblemParams p{2.0, 0.5, 1.0, 0.1, 4.0 / 3.0, 1.0, 2};
  for (auto _ : state) benchmark::DoNotOptimize(classify(p));
}
BENCHMARK(BM_Classify);

void BM_Certify(benchmark::State& state) {
  const ProblemParams p{2.0, 1.0, 1.0, 1.0 / 12.0, 2.0, 1.0, 2};
  NumericsConfig num;
  num.dx = 1.0 / 200.0;
  num.t_end = 0.05;
  num.snapshot_times = log_spaced_times(5e-5, 0.05, 40);
  const auto tr = solve(p, Geometry::radial(2, 1.3), num);
  const auto bp = stationary_bounds(BoundCase::S5a, p, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(certify(tr, bp, 1e-6).worst_violation);
}
BENCHMARK(BM_Certify)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
