#include <benchmark/benchmark.h>

#include <ldpcdes/growth_rate.hpp>
#include <ldpcdes/reference_ensembles.hpp>

using namespace ldpcdes;

namespace {

void BM_GrowthRatePoint(benchmark::State& state) {
    const auto ddp = reference::ensemble_a();
    for (auto _ : state) benchmark::DoNotOptimize(growth_rate(ddp, 0.05));
}
BENCHMARK(BM_GrowthRatePoint)->Unit(benchmark::kMillisecond);

void BM_FiniteEnumerator(benchmark::State& state) {
    const auto ddp = reference::regular(3, 6);
    for (auto _ : state) {
        auto e = brute_force_average_enumerator(ddp, state.range(0));
        benchmark::DoNotOptimize(e.back());
    }
}
BENCHMARK(BM_FiniteEnumerator)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace
