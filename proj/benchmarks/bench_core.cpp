#include <benchmark/benchmark.h>

#include "corrlife/corrlife.hpp"

using namespace corrlife;

namespace {

std::vector<std::string> names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("X" + std::to_string(i));
    return out;
}

ReturnPanel market(std::size_t n, std::size_t length) {
    return generate_panel(uniform_market(names(n), 0.3, 0.01, length + 1, 1)).returns;
}

void BM_Pearson(benchmark::State& state) {
    const auto panel = market(2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pearson(panel.row(0), panel.row(1)));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Pearson)->Arg(100)->Arg(1000)->Arg(10000);

void BM_FullPeriodMatrix(benchmark::State& state) {
    const auto panel = market(static_cast<std::size_t>(state.range(0)), 2000);
    for (auto _ : state) benchmark::DoNotOptimize(full_period_matrix(panel));
}
BENCHMARK(BM_FullPeriodMatrix)->Arg(10)->Arg(30)->Arg(67);

void BM_PortfolioMltc(benchmark::State& state) {
    const auto panel = market(static_cast<std::size_t>(state.range(0)), 2000);
    for (auto _ : state) benchmark::DoNotOptimize(portfolio_mltc(panel, 60, 1));
}
BENCHMARK(BM_PortfolioMltc)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_BuildMst(benchmark::State& state) {
    const auto matrix = full_period_matrix(market(static_cast<std::size_t>(state.range(0)), 500));
    for (auto _ : state) benchmark::DoNotOptimize(build_mst(matrix));
}
BENCHMARK(BM_BuildMst)->Arg(10)->Arg(30)->Arg(67);

void BM_RollingMsts(benchmark::State& state) {
    const auto panel = market(8, 2000);
    for (auto _ : state) {
        auto rolling = rolling_msts(panel, static_cast<int>(state.range(0)), 1);
        benchmark::DoNotOptimize(survival_curve(rolling));
    }
}
BENCHMARK(BM_RollingMsts)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Epps(benchmark::State& state) {
    AsyncTradeSpec spec;
    spec.sampling_intervals = {1, 30, 390};
    spec.horizon = 500 * 390.0;
    for (auto _ : state) benchmark::DoNotOptimize(epps_experiment(spec));
}
BENCHMARK(BM_Epps)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
