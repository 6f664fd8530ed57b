#include <benchmark/benchmark.h>

#include "wsnsec/bbs.hpp"
#include "wsnsec/bound.hpp"
#include "wsnsec/sim.hpp"
#include "wsnsec/stattests.hpp"

namespace {

const wsnsec::Bytes kSeed = {'b', 'e', 'n', 'c', 'h'};

void BM_BbsBits(benchmark::State& state) {
  const auto bits = static_cast<unsigned>(state.range(0));
  auto params = wsnsec::bbs::BbsParams::generate(bits, kSeed);
  wsnsec::ByteExpander exp(wsnsec::derive_bytes(kSeed, "bench-s"));
  wsnsec::bbs::BbsGenerator gen(params, wsnsec::bbs::derive_seed_s(params.n, exp));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen.next_bit());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BbsBits)->Arg(512)->Arg(900)->Arg(1024);

void BM_BatteryP(benchmark::State& state) {
  wsnsec::ByteExpander exp(kSeed);
  wsnsec::Bits sample;
  for (int i = 0; i < 4096; ++i) sample.push_back(exp.next_bit());
  for (auto _ : state) {
    benchmark::DoNotOptimize(wsnsec::stattests::monobit_p(sample));
    benchmark::DoNotOptimize(wsnsec::stattests::runs_p(sample));
    benchmark::DoNotOptimize(wsnsec::stattests::serial2_p(sample));
    benchmark::DoNotOptimize(wsnsec::stattests::longest_run8_p(sample));
  }
}
BENCHMARK(BM_BatteryP);

void BM_BoundEvaluate(benchmark::State& state) {
  wsnsec::bound::SecurityQuery q;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        wsnsec::bound::evaluate(q, wsnsec::bound::Interpretation::Literal));
  }
}
BENCHMARK(BM_BoundEvaluate);

void BM_SimRun(benchmark::State& state) {
  wsnsec::sim::SimConfig cfg;
  cfg.node_count = 32;
  cfg.horizon = 300.0;
  cfg.bbs_bits = 128;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wsnsec::sim::run(cfg));
  }
}
BENCHMARK(BM_SimRun);

}  // namespace

BENCHMARK_MAIN();
