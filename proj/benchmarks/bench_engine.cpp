#include <benchmark/benchmark.h>

#include "netgames/engine.hpp"
#include "netgames/graphgen.hpp"
#include "netgames/montecarlo.hpp"

namespace netgames {
namespace {

void BM_Step(benchmark::State& state) {
  const auto game = static_cast<GameKind>(state.range(0));
  const Graph g = make_geo(5, 0.25, 1);
  Rng rng(1);
  GameState s = init_state(g, 10, rng);
  for (auto _ : state) {
    if (s.finished()) {
      state.PauseTiming();
      s = init_state(g, 10, rng);
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(step(s, game, rng));
  }
}
BENCHMARK(BM_Step)->DenseRange(1, 5);

void BM_RunGame(benchmark::State& state) {
  const auto topo = static_cast<TopologyKind>(state.range(0));
  const Graph g = generate(TopologySpec::defaults(topo), 3);
  GameConfig c;
  c.game = GameKind::G2;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    c.seed = seed++;
    benchmark::DoNotOptimize(run_game(g, c));
  }
}
BENCHMARK(BM_RunGame)->DenseRange(0, 3);

void BM_ProbeAbsorbedLattice(benchmark::State& state) {
  const Graph g = make_reg(5);
  Rng rng(4);
  GameState s = init_state(g, 10, rng);
  for (int i = 0; i < 50'000 && !s.finished(); ++i) step(s, GameKind::G4, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(probe_encounters(s, GameKind::G4, ProximityRule::Adjacent, 100'000));
  }
}
BENCHMARK(BM_ProbeAbsorbedLattice)->Unit(benchmark::kMicrosecond);

void BM_Batch(benchmark::State& state) {
  const Graph g = make_ba(25, 2, 3, 1);
  GameConfig c;
  c.game = GameKind::G5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_batch(g, c, 100, 7, {.workers = static_cast<std::size_t>(state.range(0))}));
  }
}
BENCHMARK(BM_Batch)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace netgames
