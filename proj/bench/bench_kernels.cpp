// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include <vector>

#include "aigx/qog.hpp"
#include "aigx/sweep.hpp"

namespace {

aigx::Execution mode(const benchmark::State& state) {
    return state.range(0) == 0 ? aigx::Execution::Serial : aigx::Execution::Parallel;
}

void BM_MonteCarloAcceptance(benchmark::State& state) {
    const aigx::QoGDistribution base(aigx::kCaseStudyBaseMean, aigx::kCaseStudyBaseStdDev);
    const aigx::AcceptanceRule rule{aigx::kCaseStudyThreshold};
    for (auto _ : state) {
        benchmark::DoNotOptimize(aigx::monte_carlo_acceptance(base, rule, 1'000'000, 1, mode(state)));
    }
    state.SetItemsProcessed(state.iterations() * 1'000'000);
}
BENCHMARK(BM_MonteCarloAcceptance)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SweepPer(benchmark::State& state) {
    const auto config = aigx::case_study_session_config(0.0);
    const std::vector<double> grid{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(aigx::sweep_per(config, grid, 200, 1, {mode(state), false}));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()) * 200);
}
BENCHMARK(BM_SweepPer)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
