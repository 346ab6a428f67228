// Serial reference vs OpenMP sweep for the heaviest verifiers. Arg = sample count.

#include <benchmark/benchmark.h>

#include "metsymp/catalog.hpp"
#include "metsymp/submersion.hpp"

using namespace metsymp;

namespace {

const MetricSymplectization& flat_symplectization() {
  static const MetricSymplectization b =
      build_metric_symplectization(catalog_load("unit-tangent-flat-plane").structure);
  return b;
}

template <Exec E>
void BM_RiemannSweep(benchmark::State& state) {
  const auto& b = flat_symplectization();
  const TensorField R = riemann_tensor(b.g);
  const Samples pts = b.chart().sample(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto vals = sweep<TensorValue>(pts, [&](const Point& p) { return R.value(p); }, E);
    benchmark::DoNotOptimize(vals.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec E>
void BM_KmuFit(benchmark::State& state) {
  const auto s = catalog_load("unit-tangent-flat-plane").structure;
  const Samples pts = s.chart().sample(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit_kappa_mu(s, pts, E).kappa);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec E>
void BM_CurvatureRelations(benchmark::State& state) {
  const auto& b = flat_symplectization();
  const Samples pts = b.chart().sample(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_currel(b, pts, E).worst());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec E>
void BM_OneillIdentities(benchmark::State& state) {
  const auto& b = flat_symplectization();
  const Samples pts = b.chart().sample(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_oneill_curvature(b, pts, E).worst());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_RiemannSweep<Exec::serial>)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RiemannSweep<Exec::parallel>)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KmuFit<Exec::serial>)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KmuFit<Exec::parallel>)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CurvatureRelations<Exec::serial>)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CurvatureRelations<Exec::parallel>)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OneillIdentities<Exec::serial>)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OneillIdentities<Exec::parallel>)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
