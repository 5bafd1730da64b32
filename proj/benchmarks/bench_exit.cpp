#include <benchmark/benchmark.h>

#include <ldpcdes/exit_chart.hpp>
#include <ldpcdes/reference_ensembles.hpp>

using namespace ldpcdes;

namespace {

void BM_TrajectoryBec(benchmark::State& state) {
    const auto ddp = reference::ensemble_a();
    const int imax = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto traj = run_trajectory(ddp, BecParameter{0.35}, imax);
        benchmark::DoNotOptimize(traj.final_i_ev());
    }
}
BENCHMARK(BM_TrajectoryBec)->Arg(10)->Arg(200);

void BM_TrajectoryAwgn(benchmark::State& state) {
    const auto ddp = reference::ensemble_e();
    run_trajectory(ddp, AwgnParameter{1.8, 0.5}, 1);  // warm the J tables
    for (auto _ : state) {
        auto traj = run_trajectory(ddp, AwgnParameter{1.8, 0.5}, 10);
        benchmark::DoNotOptimize(traj.final_i_ev());
    }
}
BENCHMARK(BM_TrajectoryAwgn);

void BM_ThresholdBec(benchmark::State& state) {
    const ThresholdQuery q{reference::ensemble_b(), ChannelKind::Bec, 10, 0.99, 1e-6, false, ExitMode::Fast};
    for (auto _ : state) {
        auto worst = iteration_constrained_threshold(q);
        benchmark::DoNotOptimize(threshold_value(worst));
    }
}
BENCHMARK(BM_ThresholdBec);

void BM_CnExitHamming(benchmark::State& state) {
    const auto code = ComponentCode::hamming(4);
    double ia = 0.0;
    for (auto _ : state) {
        ia += 1.0 / 4096.0;
        if (ia >= 1.0) ia = 0.0;
        benchmark::DoNotOptimize(cn_exit(*code, ChannelKind::Bec, ia, ExitMode::Fast));
    }
}
BENCHMARK(BM_CnExitHamming);

}  // namespace

BENCHMARK_MAIN();
