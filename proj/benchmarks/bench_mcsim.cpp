#include <benchmark/benchmark.h>

#include "bwp/mcsim.hpp"

namespace {

const bwp::NetworkParams kParams{0.1, 4.0, 0.1, 1.0};

void BM_EstimateMeta(benchmark::State& state) {
    bwp::SimConfig cfg;
    cfg.realizations = int(state.range(0));
    const bwp::PartitionScheme s{bwp::Mode::AdaptiveSir, 2};
    for (auto _ : state) benchmark::DoNotOptimize(bwp::mcsim::estimate_meta(kParams, s, 0.1, cfg));
}
BENCHMARK(BM_EstimateMeta)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_EstimateDelaySlotCount(benchmark::State& state) {
    bwp::SimConfig cfg;
    cfg.realizations = 1000;
    const bwp::PartitionScheme s{bwp::Mode::AdaptiveSir, 3};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            bwp::mcsim::estimate_local_delay(kParams, s, cfg, bwp::DelayMethod::SlotCount));
}
BENCHMARK(BM_EstimateDelaySlotCount)->Unit(benchmark::kMillisecond);

}  // namespace
