#pragma once

#include <cstdint>
#include <vector>

#include "hanabi/map_elites.hpp"
#include "hanabi/rules.hpp"
#include "hanabi/state.hpp"

namespace hanabi {

// Positions at which two genomes differ. A metric on chromosomes.
int hamming(const Chromosome& a, const Chromosome& b);

// Mean estimated playability, from the actor's perspective, over every card
// played in the records. Replays each record to recover the views. Undefined
// (throws) when no card was played.
double risk_aversion(std::span<const GameRecord> records);

struct Snapshot {
  GameState state;  // full authoritative state; views are re-derived on use
  NicheIndex source;
  uint64_t game_seed = 0;
  int turn = 0;
  uint64_t id = 0;  // corpus-wide ordinal, pins the agreement RNG substream
};

struct StateCorpus {
  int bins = kDefaultBins;
  int games_per_elite = 0;
  uint64_t seed = 0;
  std::vector<Snapshot> snapshots;
};

// Every non-terminal decision point from `games_per_elite` seeded self-play
// games of each elite. No deduplication; repeated states count each time.
StateCorpus collect_states(const Archive& archive, const RuleCatalog& catalog,
                           int games_per_elite, uint64_t seed);

struct NicheAgreement {
  NicheIndex niche;
  uint64_t agree = 0;
  uint64_t total = 0;
  double fraction = 0.0;
};

struct AgreementReport {
  std::vector<NicheAgreement> per_niche;  // niches occupied in both archives
  double mean_agreement = 0.0;            // pooled over all compared snapshots
  double mean_legal_actions = 0.0;        // over corpus snapshots
};

// For each niche occupied in both archives, the fraction of corpus snapshots
// on which the two elites pick the identical action. Rules with internal
// randomness draw from a stream pinned to (snapshot id, chromosome hash), so
// identical chromosomes always agree and reruns reproduce exactly.
AgreementReport action_agreement(const Archive& a, const Archive& b, const StateCorpus& corpus,
                                 const RuleCatalog& catalog, int threads = 1);

}  // namespace hanabi
