#include <benchmark/benchmark.h>

#include "modent/entanglement.hpp"
#include "modent/fermion.hpp"
#include "modent/oracle.hpp"
#include "modent/sweep.hpp"

using namespace modent;

namespace {

CouplingVector chain(benchmark::State& state) {
    return build_couplings(ModularPattern{static_cast<int>(state.range(0)), 8, 0.1, 1.0});
}

void BM_Solve(benchmark::State& state) {
    const CouplingVector c = chain(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(c));
    }
    state.SetLabel(std::to_string(c.sites()) + " sites");
}
BENCHMARK(BM_Solve)->Arg(2)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_EndToEndConcurrence(benchmark::State& state) {
    const CouplingVector c = chain(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(end_to_end_concurrence(c));
    }
}
BENCHMARK(BM_EndToEndConcurrence)->Arg(2)->Arg(10)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_Report(benchmark::State& state) {
    const ChainSpec spec = ChainSpec::pattern(static_cast<int>(state.range(0)), 8, 0.1, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(report(spec));
    }
}
BENCHMARK(BM_Report)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Threshold(benchmark::State& state) {
    const ModularPattern p{20, static_cast<int>(state.range(0)), 0.1, 0.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_threshold(p));
    }
}
BENCHMARK(BM_Threshold)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ExactDiagonalization(benchmark::State& state) {
    const CouplingVector c = build_couplings(ModularPattern{2, static_cast<int>(state.range(0)), 0.1, 1.0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(ed_solve(c));
    }
    state.SetLabel(std::to_string(c.sites()) + " sites");
}
BENCHMARK(BM_ExactDiagonalization)->Arg(3)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
