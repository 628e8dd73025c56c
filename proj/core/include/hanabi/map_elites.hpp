#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hanabi/engine.hpp"
#include "hanabi/rules.hpp"
#include "hanabi/stats.hpp"

namespace hanabi {

struct EvolutionConfig {
  uint64_t total_candidates = 1'000'000;  // G
  uint64_t random_phase = 10'000;         // uniform-random chromosomes before variation
  int games_per_eval = 100;
  double mutation_rate = 0.1;       // per gene
  double crossover_probability = 0.5;
  int bins = kDefaultBins;
  int players = 2;
  uint64_t checkpoint_interval = 10'000;  // generations; 0 disables

  GameConfig game_config() const { return GameConfig{players}; }
  friend bool operator==(const EvolutionConfig&, const EvolutionConfig&) = default;
};

struct ArchiveEntry {
  Chromosome chromosome;
  double fitness = 0.0;  // mean self-play score from this entry's own evaluation
  BehaviorDescriptor desc;
  PlayStats stats;                  // pooled over both seats of those games
  std::vector<uint64_t> eval_seeds;
  uint64_t generation = 0;          // when the entry was placed

  friend bool operator==(const ArchiveEntry&, const ArchiveEntry&) = default;
};

struct Archive {
  int bins = kDefaultBins;
  std::vector<std::optional<ArchiveEntry>> cells;  // bins*bins, row-major (i*bins+j)
  uint64_t master_seed = 0;
  uint64_t generations = 0;  // candidates processed so far
  EvolutionConfig config;
  uint64_t catalog_hash = 0;
  std::string population_id;

  Archive() : cells(static_cast<size_t>(bins) * bins) {}
  explicit Archive(const EvolutionConfig& cfg, uint64_t seed)
      : bins(cfg.bins),
        cells(static_cast<size_t>(cfg.bins) * cfg.bins),
        master_seed(seed),
        config(cfg) {}

  size_t linear(NicheIndex n) const { return static_cast<size_t>(n.i) * bins + n.j; }
  const std::optional<ArchiveEntry>& cell(NicheIndex n) const { return cells[linear(n)]; }
  std::optional<ArchiveEntry>& cell(NicheIndex n) { return cells[linear(n)]; }

  int coverage() const;
  std::vector<NicheIndex> occupied() const;  // lexicographic order
};

struct FitnessResult {
  double mean = 0.0;
  double sd = 0.0;
  PlayStats stats;
  int games = 0;
};

// Per-generation evaluation seeds, counter-derived from the master seed so
// any generation's list is reconstructible without sequential RNG state.
std::vector<uint64_t> evaluation_seeds(uint64_t master_seed, uint64_t generation, int n);

// Self-play fitness: mean score over the given seeds, stats pooled over both
// seats for the descriptor.
FitnessResult evaluate_fitness(const RuleCatalog& catalog, const Chromosome& chromosome,
                               std::span<const uint64_t> seeds, const GameConfig& config);

// Random phase: uniform genes. Variation phase: uniform occupied-niche parent,
// optional uniform crossover with a second occupied-niche elite, then per-gene
// mutation. Falls back to uniform genes while the archive is empty.
Chromosome new_chromosome(const Archive& archive, uint64_t generation,
                          const EvolutionConfig& config, const RuleCatalog& catalog, Rng& rng);

enum class Placement : uint8_t {
  kInserted,
  kReplaced,
  kKeptIncumbent,
  kRejectedFitness,     // admission gate: mean must be > 0
  kRejectedDescriptor,  // undefined descriptor (no plays or no token turns)
};

// Seed-matched insertion: an occupied cell's incumbent is re-evaluated on the
// candidate's exact seed list and replaced only on a strict win. A kept
// incumbent's stored record is untouched, so stored descriptors, seeds and
// grid cells stay mutually consistent.
Placement try_insert(Archive& archive, const RuleCatalog& catalog, const Chromosome& chromosome,
                     const FitnessResult& result, std::span<const uint64_t> seeds,
                     uint64_t generation);

struct RunOptions {
  int threads = 1;  // 1 = bit-reproducible; >1 relaxes generation ordering
  std::string checkpoint_dir;  // empty disables checkpointing
  std::function<void(uint64_t generation, const Archive&)> progress;
  uint64_t progress_interval = 10'000;
};

// Runs the full loop (generate, evaluate, insert) for config.total_candidates
// generations, optionally resuming from a checkpointed archive. Verifies the
// in-run invariants: coverage never shrinks and every insertion decision
// respects the matched comparison.
Archive run_evolution(const EvolutionConfig& config, uint64_t master_seed,
                      const RuleCatalog& catalog, const RunOptions& options = {},
                      std::optional<Archive> resume_from = std::nullopt);

struct ReevalEntry {
  NicheIndex niche;
  double mean = 0.0;
  double sd = 0.0;
  double sem = 0.0;
  int games = 0;
  double archived_fitness = 0.0;
};

struct ReevalReport {
  int games_per_entry = 0;
  std::vector<ReevalEntry> entries;  // lexicographic by niche
  double max_mean = 0.0;
  double mean_of_means = 0.0;
  double max_sd = 0.0;
};

// Report-only re-evaluation of every elite on fresh seeds; the archive is not
// modified.
ReevalReport reevaluate(const Archive& archive, const RuleCatalog& catalog, int games,
                        uint64_t reeval_seed, int threads = 1);

}  // namespace hanabi
