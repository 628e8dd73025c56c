#include "hanabi/crossplay.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace hanabi {

CrossPlayResult cross_play(const RuleCatalog& catalog, const Chromosome& a, const Chromosome& b,
                           std::span<const uint64_t> seeds, const GameConfig& config,
                           bool mirror_seats) {
  if (config.players != 2) throw std::invalid_argument("cross_play is a 2-player protocol");
  CrossPlayResult res;
  res.games = static_cast<int>(seeds.size());
  RuleAgent agent_a(catalog, a);
  RuleAgent agent_b(catalog, b);
  double sum = 0.0, sum_sq = 0.0;
  for (uint64_t seed : seeds) {
    bool swap = (stream_seed(seed, "seating") & 1) != 0;
    if (mirror_seats) swap = !swap;
    GameRecord rec = swap ? play_game(agent_b, agent_a, seed) : play_game(agent_a, agent_b, seed);
    sum += rec.final_score;
    sum_sq += static_cast<double>(rec.final_score) * rec.final_score;
  }
  if (res.games > 0) {
    res.mean = sum / res.games;
    const double var = sum_sq / res.games - res.mean * res.mean;
    res.sd = var > 0.0 ? std::sqrt(var) : 0.0;
  }
  return res;
}

std::vector<uint64_t> cross_play_seeds(uint64_t master_seed, uint64_t pair_a, uint64_t pair_b,
                                       int n) {
  std::vector<uint64_t> seeds(n);
  for (int i = 0; i < n; ++i)
    seeds[i] = stream_seed(master_seed, "matchup", pair_a, pair_b, static_cast<uint64_t>(i));
  return seeds;
}

bool MatchupMatrix::has(NicheIndex a, NicheIndex b) const {
  if (linear(a) > linear(b)) std::swap(a, b);
  const auto key = std::make_pair(linear(a), linear(b));
  auto it = std::lower_bound(pairs.begin(), pairs.end(), key, [this](const PairScore& p, auto k) {
    return std::make_pair(linear(p.a), linear(p.b)) < k;
  });
  return it != pairs.end() && linear(it->a) == key.first && linear(it->b) == key.second;
}

const PairScore& MatchupMatrix::pair(NicheIndex a, NicheIndex b) const {
  if (linear(a) > linear(b)) std::swap(a, b);
  const auto key = std::make_pair(linear(a), linear(b));
  auto it = std::lower_bound(pairs.begin(), pairs.end(), key, [this](const PairScore& p, auto k) {
    return std::make_pair(linear(p.a), linear(p.b)) < k;
  });
  if (it == pairs.end() || linear(it->a) != key.first || linear(it->b) != key.second)
    throw std::out_of_range("match-up pair not present in matrix");
  return *it;
}

double MatchupMatrix::score(NicheIndex a, NicheIndex b) const { return pair(a, b).mean; }

std::vector<NicheIndex> MatchupMatrix::niches() const {
  // Self-pairs are always present, so the diagonal enumerates the population.
  std::vector<NicheIndex> out;
  for (const PairScore& p : pairs)
    if (p.a == p.b) out.push_back(p.a);
  std::sort(out.begin(), out.end());
  return out;
}

MatchupMatrix matchup_matrix(const Archive& archive, const RuleCatalog& catalog,
                             int games_per_pair, uint64_t master_seed, int threads) {
  MatchupMatrix m;
  m.bins = archive.bins;
  m.population_id = archive.population_id;
  m.games_per_pair = games_per_pair;
  m.master_seed = master_seed;

  const std::vector<NicheIndex> occupied = archive.occupied();
  for (size_t x = 0; x < occupied.size(); ++x)
    for (size_t y = x; y < occupied.size(); ++y)
      m.pairs.push_back(PairScore{occupied[x], occupied[y], 0.0, 0.0, games_per_pair});

  const GameConfig config = archive.config.game_config();
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t k = next.fetch_add(1);
      if (k >= m.pairs.size()) return;
      PairScore& p = m.pairs[k];
      const std::vector<uint64_t> seeds =
          cross_play_seeds(master_seed, m.linear(p.a), m.linear(p.b), games_per_pair);
      const CrossPlayResult r = cross_play(catalog, archive.cell(p.a)->chromosome,
                                           archive.cell(p.b)->chromosome, seeds, config);
      p.mean = r.mean;
      p.sd = r.sd;
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return m;
}

CorrespondingPairsReport corresponding_pairs(const Archive& a, const Archive& b,
                                             const RuleCatalog& catalog, int games,
                                             uint64_t master_seed, int threads) {
  if (a.bins != b.bins) throw std::invalid_argument("archives use different grids");
  CorrespondingPairsReport report;
  report.games_per_pair = games;
  for (const NicheIndex& n : a.occupied())
    if (b.cell(n)) report.pairs.push_back(CorrespondingPair{n, 0.0, 0.0, games});

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t k = next.fetch_add(1);
      if (k >= report.pairs.size()) return;
      CorrespondingPair& p = report.pairs[k];
      const std::vector<uint64_t> seeds =
          cross_play_seeds(master_seed, a.linear(p.niche), a.linear(p.niche), games);
      const CrossPlayResult r =
          cross_play(catalog, a.cell(p.niche)->chromosome, b.cell(p.niche)->chromosome, seeds,
                     a.config.game_config());
      p.mean = r.mean;
      p.sd = r.sd;
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const CorrespondingPair& p : report.pairs) report.summary_mean += p.mean;
  if (!report.pairs.empty()) report.summary_mean /= static_cast<double>(report.pairs.size());
  return report;
}

}  // namespace hanabi
