#include "hanabi/analysis.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

namespace hanabi {

int hamming(const Chromosome& a, const Chromosome& b) {
  int d = 0;
  for (int i = 0; i < kChromosomeLength; ++i) d += a.genes[i] != b.genes[i];
  return d;
}

double risk_aversion(std::span<const GameRecord> records) {
  double sum = 0.0;
  uint64_t plays = 0;
  for (const GameRecord& rec : records) {
    replay_record(rec, [&](const GameState& s, const TurnEntry& t) {
      if (t.action.type != ActionType::kPlay) return;
      sum += playability(PlayerView(s, t.player), t.action.slot);
      ++plays;
    });
  }
  if (plays == 0) throw std::invalid_argument("risk_aversion undefined: no cards were played");
  return sum / static_cast<double>(plays);
}

StateCorpus collect_states(const Archive& archive, const RuleCatalog& catalog,
                           int games_per_elite, uint64_t seed) {
  StateCorpus corpus;
  corpus.bins = archive.bins;
  corpus.games_per_elite = games_per_elite;
  corpus.seed = seed;

  const GameConfig config = archive.config.game_config();
  for (const NicheIndex& n : archive.occupied()) {
    const ArchiveEntry& e = *archive.cell(n);
    RuleAgent a(catalog, e.chromosome);
    RuleAgent b(catalog, e.chromosome);
    for (int g = 0; g < games_per_elite; ++g) {
      const uint64_t game_seed =
          stream_seed(seed, "corpus", archive.linear(n), static_cast<uint64_t>(g));
      PlayOptions options;
      options.on_turn = [&corpus, &n, game_seed](const GameState& s, const Action&) {
        Snapshot snap;
        snap.state = s;
        snap.source = n;
        snap.game_seed = game_seed;
        snap.turn = s.turn_number;
        snap.id = corpus.snapshots.size();
        corpus.snapshots.push_back(std::move(snap));
      };
      play_game(a, b, game_seed, options);
    }
  }
  return corpus;
}

AgreementReport action_agreement(const Archive& a, const Archive& b, const StateCorpus& corpus,
                                 const RuleCatalog& catalog, int threads) {
  if (a.bins != b.bins) throw std::invalid_argument("archives use different grids");

  std::vector<NicheIndex> common;
  for (const NicheIndex& n : a.occupied())
    if (b.cell(n)) common.push_back(n);

  AgreementReport report;
  report.per_niche.resize(common.size());

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t k = next.fetch_add(1);
      if (k >= common.size()) return;
      const NicheIndex n = common[k];
      const Chromosome& ca = a.cell(n)->chromosome;
      const Chromosome& cb = b.cell(n)->chromosome;
      const uint64_t ha = chromosome_hash(ca);
      const uint64_t hb = chromosome_hash(cb);
      NicheAgreement agg{n, 0, 0, 0.0};
      for (const Snapshot& snap : corpus.snapshots) {
        PlayerView view(snap.state, snap.state.current_player);
        Rng rng_a(stream_seed(snap.id, "agreement", ha));
        Rng rng_b(stream_seed(snap.id, "agreement", hb));
        const Action action_a = agent_act(catalog, ca, view, rng_a);
        const Action action_b = agent_act(catalog, cb, view, rng_b);
        agg.agree += action_a == action_b;
        ++agg.total;
      }
      agg.fraction = agg.total > 0 ? static_cast<double>(agg.agree) / agg.total : 0.0;
      report.per_niche[k] = agg;
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  uint64_t agree = 0, total = 0;
  for (const NicheAgreement& x : report.per_niche) {
    agree += x.agree;
    total += x.total;
  }
  report.mean_agreement = total > 0 ? static_cast<double>(agree) / total : 0.0;

  uint64_t legal_sum = 0;
  for (const Snapshot& snap : corpus.snapshots) legal_sum += legal_actions(snap.state).size();
  report.mean_legal_actions =
      corpus.snapshots.empty() ? 0.0
                               : static_cast<double>(legal_sum) / corpus.snapshots.size();
  return report;
}

}  // namespace hanabi
