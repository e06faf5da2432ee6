#include <benchmark/benchmark.h>

#include "mrsdn/erlang.hpp"
#include "mrsdn/event_queue.hpp"
#include "mrsdn/random.hpp"
#include "mrsdn/simulation.hpp"

namespace {

void BM_EventQueueScheduleDispatch(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    mrsdn::sim::EventQueue q;
    mrsdn::sim::RandomStream rng(1, "bench");
    long long sink = 0;
    for (int i = 0; i < n; ++i) {
      q.schedule(rng.uniform(0.0, 1000.0), mrsdn::sim::EventKind::MessageDelivery,
                 [&sink] { ++sink; });
    }
    q.run_until(1000.0);
    benchmark::DoNotOptimize(sink);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_EventQueueScheduleDispatch)->Arg(1000)->Arg(100000);

void BM_ErlangB(benchmark::State& state) {
  const int servers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mrsdn::workload::erlang_b(0.8 * servers, servers));
  }
}
BENCHMARK(BM_ErlangB)->Arg(37)->Arg(512);

void BM_CtmcBlocking(benchmark::State& state) {
  const int servers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mrsdn::workload::ctmc_blocking(0.5, 60.0, servers));
  }
}
BENCHMARK(BM_CtmcBlocking)->Arg(10)->Arg(37);

void BM_SimulationRun(benchmark::State& state) {
  for (auto _ : state) {
    mrsdn::harness::SimConfig cfg;
    cfg.workload.lambda_d = 0.2;
    cfg.workload.lambda_v = 0.0;
    cfg.workload.duration_s = static_cast<double>(state.range(0));
    cfg.workload.warmup_s = 0.0;
    mrsdn::harness::Simulation sim(cfg);
    benchmark::DoNotOptimize(sim.run());
  }
}
BENCHMARK(BM_SimulationRun)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
