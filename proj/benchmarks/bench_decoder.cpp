#include <benchmark/benchmark.h>

#include <ldpcdes/decoder.hpp>
#include <ldpcdes/exit_chart.hpp>
#include <ldpcdes/reference_ensembles.hpp>
#include <ldpcdes/rng.hpp>

using namespace ldpcdes;

namespace {

void BM_DecodeBecGldpc(benchmark::State& state) {
    const auto graph = sample_random_code(reference::ensemble_a(), 4000, 1);
    Rng rng(3);
    std::vector<Bit> word(graph.n);
    for (auto _ : state) {
        state.PauseTiming();
        for (int i = 0; i < graph.n; ++i) word[i] = rng.uniform() < 0.30 ? Bit::Erased : Bit::Zero;
        state.ResumeTiming();
        auto out = decode_bec(graph, word, 10);
        benchmark::DoNotOptimize(out.iterations_used);
    }
}
BENCHMARK(BM_DecodeBecGldpc)->Unit(benchmark::kMicrosecond);

void BM_DecodeBecLdpc(benchmark::State& state) {
    const auto graph = sample_random_code(reference::ensemble_b(), 4000, 1);
    Rng rng(3);
    std::vector<Bit> word(graph.n);
    for (auto _ : state) {
        state.PauseTiming();
        for (int i = 0; i < graph.n; ++i) word[i] = rng.uniform() < 0.30 ? Bit::Erased : Bit::Zero;
        state.ResumeTiming();
        auto out = decode_bec(graph, word, 10);
        benchmark::DoNotOptimize(out.iterations_used);
    }
}
BENCHMARK(BM_DecodeBecLdpc)->Unit(benchmark::kMicrosecond);

void BM_DecodeAwgn(benchmark::State& state) {
    const auto graph = sample_random_code(reference::ensemble_e(), 1024, 1);
    Rng rng(3);
    const double sigma_n = 2.0 / AwgnParameter{2.0, 0.5}.llr_sigma();
    std::vector<double> llrs(graph.n);
    for (auto _ : state) {
        state.PauseTiming();
        for (int i = 0; i < graph.n; ++i) llrs[i] = 2.0 * (1.0 + sigma_n * rng.normal()) / (sigma_n * sigma_n);
        state.ResumeTiming();
        auto out = decode_awgn(graph, llrs, 10);
        benchmark::DoNotOptimize(out.iterations_used);
    }
}
BENCHMARK(BM_DecodeAwgn)->Unit(benchmark::kMicrosecond);

void BM_PegConstruct(benchmark::State& state) {
    const auto ddp = reference::regular(3, 6);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto graph = peg_construct(ddp, state.range(0), ++seed);
        benchmark::DoNotOptimize(graph.edge_count());
    }
}
BENCHMARK(BM_PegConstruct)->Arg(96)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
