#include <benchmark/benchmark.h>

#include "hanabi/map_elites.hpp"
#include "hanabi/rules.hpp"

using namespace hanabi;

namespace {

Chromosome sample_chromosome(uint64_t seed) {
  Chromosome c;
  Rng rng(seed);
  for (auto& g : c.genes)
    g = static_cast<RuleId>(rng.uniform(static_cast<uint32_t>(RuleCatalog::standard().size())));
  return c;
}

void BM_NewGame(benchmark::State& state) {
  uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(new_game(GameConfig{2}, seed++));
}
BENCHMARK(BM_NewGame);

void BM_ApplyPlay(benchmark::State& state) {
  const GameState base = new_game(GameConfig{2}, 99);
  for (auto _ : state) {
    GameState s = base;
    benchmark::DoNotOptimize(apply(s, Action::play(0)));
  }
}
BENCHMARK(BM_ApplyPlay);

void BM_LegalActions(benchmark::State& state) {
  const GameState s = new_game(GameConfig{2}, 7);
  for (auto _ : state) benchmark::DoNotOptimize(legal_actions(s));
}
BENCHMARK(BM_LegalActions);

void BM_Playability(benchmark::State& state) {
  const GameState s = new_game(GameConfig{2}, 11);
  const PlayerView view(s, s.current_player);
  for (auto _ : state)
    for (int slot = 0; slot < 5; ++slot) benchmark::DoNotOptimize(playability(view, slot));
}
BENCHMARK(BM_Playability);

void BM_AgentAct(benchmark::State& state) {
  const RuleCatalog& cat = RuleCatalog::standard();
  const Chromosome c = sample_chromosome(3);
  const GameState s = new_game(GameConfig{2}, 13);
  const PlayerView view(s, s.current_player);
  Rng rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(agent_act(cat, c, view, rng));
}
BENCHMARK(BM_AgentAct);

void BM_FullGame(benchmark::State& state) {
  const RuleCatalog& cat = RuleCatalog::standard();
  RuleAgent a(cat, sample_chromosome(21));
  RuleAgent b(cat, sample_chromosome(21));
  uint64_t seed = 0;
  int64_t turns = 0;
  for (auto _ : state) {
    const GameRecord rec = play_game(a, b, seed++);
    turns += rec.turn_count;
    benchmark::DoNotOptimize(rec.final_score);
  }
  state.SetItemsProcessed(state.iterations());
  state.counters["turns/game"] =
      benchmark::Counter(static_cast<double>(turns) / state.iterations());
}
BENCHMARK(BM_FullGame);

void BM_Fitness100(benchmark::State& state) {
  const RuleCatalog& cat = RuleCatalog::standard();
  const Chromosome c = sample_chromosome(8);
  const auto seeds = evaluation_seeds(1, 0, 100);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_fitness(cat, c, seeds, GameConfig{2}));
}
BENCHMARK(BM_Fitness100);

}  // namespace

BENCHMARK_MAIN();
