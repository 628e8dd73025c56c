#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hanabi/map_elites.hpp"
#include "hanabi/rules.hpp"

namespace hanabi {

struct CrossPlayResult {
  double mean = 0.0;
  double sd = 0.0;
  int games = 0;
};

// Games between two chromosomes on the given seeds. Which agent takes seat 0
// is randomized per game from the seed; mirror_seats flips every assignment,
// so (a,b) and (b,a,mirrored) produce identical games.
CrossPlayResult cross_play(const RuleCatalog& catalog, const Chromosome& a, const Chromosome& b,
                           std::span<const uint64_t> seeds, const GameConfig& config,
                           bool mirror_seats = false);

std::vector<uint64_t> cross_play_seeds(uint64_t master_seed, uint64_t pair_a, uint64_t pair_b,
                                       int n);

struct PairScore {
  NicheIndex a;  // canonical: linear(a) <= linear(b)
  NicheIndex b;
  double mean = 0.0;
  double sd = 0.0;
  int games = 0;
};

// Mean cross-play score for every unordered pair of elites in one population,
// self-pairs included. Symmetric by construction.
struct MatchupMatrix {
  int bins = kDefaultBins;
  std::string population_id;
  int games_per_pair = 0;
  uint64_t master_seed = 0;
  std::vector<PairScore> pairs;  // sorted by (linear(a), linear(b))

  size_t linear(NicheIndex n) const { return static_cast<size_t>(n.i) * bins + n.j; }
  bool has(NicheIndex a, NicheIndex b) const;
  double score(NicheIndex a, NicheIndex b) const;  // throws if the pair is absent
  const PairScore& pair(NicheIndex a, NicheIndex b) const;
  std::vector<NicheIndex> niches() const;  // lexicographic
};

// Per-pair seed streams keyed by the canonical pair make the result
// independent of scheduling; any thread count yields the same matrix.
MatchupMatrix matchup_matrix(const Archive& archive, const RuleCatalog& catalog,
                             int games_per_pair, uint64_t master_seed, int threads = 1);

struct CorrespondingPair {
  NicheIndex niche;
  double mean = 0.0;
  double sd = 0.0;
  int games = 0;
};

struct CorrespondingPairsReport {
  std::vector<CorrespondingPair> pairs;  // niches occupied in both archives
  double summary_mean = 0.0;             // mean of per-pair means
  int games_per_pair = 0;
};

// Cross-play between the elites occupying the same niche in two populations.
CorrespondingPairsReport corresponding_pairs(const Archive& a, const Archive& b,
                                             const RuleCatalog& catalog, int games,
                                             uint64_t master_seed, int threads = 1);

}  // namespace hanabi
