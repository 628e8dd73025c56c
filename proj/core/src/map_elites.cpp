#include "hanabi/map_elites.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "hanabi/serialize.hpp"

namespace hanabi {

int Archive::coverage() const {
  int n = 0;
  for (const auto& c : cells) n += c.has_value();
  return n;
}

std::vector<NicheIndex> Archive::occupied() const {
  std::vector<NicheIndex> out;
  out.reserve(64);
  for (int i = 0; i < bins; ++i)
    for (int j = 0; j < bins; ++j)
      if (cells[static_cast<size_t>(i) * bins + j]) out.push_back(NicheIndex{i, j});
  return out;
}

std::vector<uint64_t> evaluation_seeds(uint64_t master_seed, uint64_t generation, int n) {
  std::vector<uint64_t> seeds(n);
  for (int i = 0; i < n; ++i)
    seeds[i] = stream_seed(master_seed, "evaluation", generation, static_cast<uint64_t>(i));
  return seeds;
}

FitnessResult evaluate_fitness(const RuleCatalog& catalog, const Chromosome& chromosome,
                               std::span<const uint64_t> seeds, const GameConfig& config) {
  FitnessResult res;
  res.games = static_cast<int>(seeds.size());
  double sum = 0.0, sum_sq = 0.0;
  RuleAgent a(catalog, chromosome);
  RuleAgent b(catalog, chromosome);
  std::vector<Agent*> seats;
  seats.reserve(config.players);
  std::vector<RuleAgent> extra;
  extra.reserve(config.players > 2 ? config.players - 2 : 0);
  seats.push_back(&a);
  seats.push_back(&b);
  for (int p = 2; p < config.players; ++p) {
    extra.emplace_back(catalog, chromosome);
    seats.push_back(&extra.back());
  }
  for (uint64_t seed : seeds) {
    GameRecord rec = play_game(seats, config, seed);
    sum += rec.final_score;
    sum_sq += static_cast<double>(rec.final_score) * rec.final_score;
    for (const PlayStats& s : rec.stats) res.stats += s;
  }
  if (res.games > 0) {
    res.mean = sum / res.games;
    const double var = sum_sq / res.games - res.mean * res.mean;
    res.sd = var > 0.0 ? std::sqrt(var) : 0.0;
  }
  return res;
}

Chromosome new_chromosome(const Archive& archive, uint64_t generation,
                          const EvolutionConfig& config, const RuleCatalog& catalog, Rng& rng) {
  const auto rule_count = static_cast<uint32_t>(catalog.size());
  auto uniform_genes = [&] {
    Chromosome c;
    for (auto& g : c.genes) g = static_cast<RuleId>(rng.uniform(rule_count));
    return c;
  };

  if (generation < config.random_phase) return uniform_genes();
  const std::vector<NicheIndex> occupied = archive.occupied();
  if (occupied.empty()) return uniform_genes();

  Chromosome child =
      archive.cell(occupied[rng.uniform(static_cast<uint32_t>(occupied.size()))])->chromosome;
  if (rng.bernoulli(config.crossover_probability)) {
    const Chromosome& partner =
        archive.cell(occupied[rng.uniform(static_cast<uint32_t>(occupied.size()))])->chromosome;
    for (int g = 0; g < kChromosomeLength; ++g)
      if (rng.bernoulli(0.5)) child.genes[g] = partner.genes[g];
  }
  for (auto& g : child.genes)
    if (rng.bernoulli(config.mutation_rate)) g = static_cast<RuleId>(rng.uniform(rule_count));
  return child;
}

namespace {

ArchiveEntry make_entry(const Chromosome& chromosome, const FitnessResult& result,
                        const BehaviorDescriptor& desc, std::span<const uint64_t> seeds,
                        uint64_t generation) {
  ArchiveEntry e;
  e.chromosome = chromosome;
  e.fitness = result.mean;
  e.desc = desc;
  e.stats = result.stats;
  e.eval_seeds.assign(seeds.begin(), seeds.end());
  e.generation = generation;
  return e;
}

}  // namespace

Placement try_insert(Archive& archive, const RuleCatalog& catalog, const Chromosome& chromosome,
                     const FitnessResult& result, std::span<const uint64_t> seeds,
                     uint64_t generation) {
  if (!(result.mean > 0.0)) return Placement::kRejectedFitness;
  const std::optional<BehaviorDescriptor> desc = descriptor(result.stats);
  if (!desc) return Placement::kRejectedDescriptor;

  const NicheIndex cell = niche(*desc, archive.bins);
  std::optional<ArchiveEntry>& slot = archive.cell(cell);
  if (!slot) {
    slot = make_entry(chromosome, result, *desc, seeds, generation);
    return Placement::kInserted;
  }

  const FitnessResult incumbent =
      evaluate_fitness(catalog, slot->chromosome, seeds, archive.config.game_config());
  if (result.mean > incumbent.mean) {
    slot = make_entry(chromosome, result, *desc, seeds, generation);
    return Placement::kReplaced;
  }
  return Placement::kKeptIncumbent;
}

namespace {

void maybe_checkpoint(const Archive& archive, const RunOptions& options, uint64_t generation) {
  const uint64_t interval = archive.config.checkpoint_interval;
  if (options.checkpoint_dir.empty() || interval == 0) return;
  if ((generation + 1) % interval != 0) return;
  save_archive(archive, options.checkpoint_dir + "/checkpoint.json");
}

void run_single_threaded(Archive& archive, const EvolutionConfig& config, uint64_t master_seed,
                         const RuleCatalog& catalog, const RunOptions& options) {
  int coverage = archive.coverage();
  for (uint64_t g = archive.generations; g < config.total_candidates; ++g) {
    Rng rng(stream_seed(master_seed, "evolution", g));
    const Chromosome c = new_chromosome(archive, g, config, catalog, rng);
    const std::vector<uint64_t> seeds = evaluation_seeds(master_seed, g, config.games_per_eval);
    const FitnessResult res = evaluate_fitness(catalog, c, seeds, config.game_config());
    try_insert(archive, catalog, c, res, seeds, g);
    archive.generations = g + 1;

    const int new_coverage = archive.coverage();
    if (new_coverage < coverage) throw std::logic_error("archive coverage decreased");
    coverage = new_coverage;

    maybe_checkpoint(archive, options, g);
    if (options.progress && options.progress_interval > 0 &&
        (g + 1) % options.progress_interval == 0)
      options.progress(g + 1, archive);
  }
}

void run_parallel(Archive& archive, const EvolutionConfig& config, uint64_t master_seed,
                  const RuleCatalog& catalog, const RunOptions& options) {
  std::mutex mu;  // guards archive and the per-cell stamps
  std::vector<uint64_t> stamps(archive.cells.size(), 0);
  std::atomic<uint64_t> next{archive.generations};
  std::atomic<uint64_t> done{archive.generations};

  auto worker = [&] {
    for (;;) {
      const uint64_t g = next.fetch_add(1);
      if (g >= config.total_candidates) return;
      Rng rng(stream_seed(master_seed, "evolution", g));
      Chromosome c;
      {
        std::lock_guard lock(mu);
        c = new_chromosome(archive, g, config, catalog, rng);
      }
      const std::vector<uint64_t> seeds = evaluation_seeds(master_seed, g, config.games_per_eval);
      const FitnessResult res = evaluate_fitness(catalog, c, seeds, config.game_config());

      if (res.mean > 0.0) {
        if (const auto desc = descriptor(res.stats)) {
          const NicheIndex cell = niche(*desc, archive.bins);
          const size_t lin = archive.linear(cell);
          // Optimistic incumbent re-evaluation: the expensive re-run happens
          // outside the lock and commits only if the cell is unchanged.
          for (;;) {
            Chromosome incumbent;
            uint64_t stamp;
            {
              std::lock_guard lock(mu);
              stamp = stamps[lin];
              if (!archive.cells[lin]) {
                archive.cells[lin] = make_entry(c, res, *desc, seeds, g);
                ++stamps[lin];
                break;
              }
              incumbent = archive.cells[lin]->chromosome;
            }
            const FitnessResult inc_res =
                evaluate_fitness(catalog, incumbent, seeds, config.game_config());
            {
              std::lock_guard lock(mu);
              if (stamps[lin] != stamp) continue;  // cell changed underneath us
              if (res.mean > inc_res.mean) {
                archive.cells[lin] = make_entry(c, res, *desc, seeds, g);
                ++stamps[lin];
              }
              break;
            }
          }
        }
      }

      const uint64_t finished = done.fetch_add(1) + 1;
      {
        std::lock_guard lock(mu);
        archive.generations = std::max(archive.generations, finished);
        maybe_checkpoint(archive, options, finished - 1);
        if (options.progress && options.progress_interval > 0 &&
            finished % options.progress_interval == 0)
          options.progress(finished, archive);
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(options.threads);
  for (int t = 0; t < options.threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  archive.generations = config.total_candidates;
}

}  // namespace

Archive run_evolution(const EvolutionConfig& config, uint64_t master_seed,
                      const RuleCatalog& catalog, const RunOptions& options,
                      std::optional<Archive> resume_from) {
  Archive archive = resume_from ? std::move(*resume_from) : Archive(config, master_seed);
  if (archive.bins != config.bins || archive.master_seed != master_seed)
    throw std::invalid_argument("resume archive does not match run configuration");
  archive.config = config;
  archive.catalog_hash = catalog.hash();

  if (options.threads <= 1)
    run_single_threaded(archive, config, master_seed, catalog, options);
  else
    run_parallel(archive, config, master_seed, catalog, options);
  return archive;
}

ReevalReport reevaluate(const Archive& archive, const RuleCatalog& catalog, int games,
                        uint64_t reeval_seed, int threads) {
  ReevalReport report;
  report.games_per_entry = games;
  const std::vector<NicheIndex> occupied = archive.occupied();
  report.entries.resize(occupied.size());

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t k = next.fetch_add(1);
      if (k >= occupied.size()) return;
      const NicheIndex n = occupied[k];
      const ArchiveEntry& e = *archive.cell(n);
      std::vector<uint64_t> seeds(games);
      for (int i = 0; i < games; ++i)
        seeds[i] = stream_seed(reeval_seed, "reeval", archive.linear(n), i);
      const FitnessResult res =
          evaluate_fitness(catalog, e.chromosome, seeds, archive.config.game_config());
      report.entries[k] = ReevalEntry{n,
                                      res.mean,
                                      res.sd,
                                      games > 0 ? res.sd / std::sqrt(games) : 0.0,
                                      games,
                                      e.fitness};
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const ReevalEntry& e : report.entries) {
    report.max_mean = std::max(report.max_mean, e.mean);
    report.max_sd = std::max(report.max_sd, e.sd);
    report.mean_of_means += e.mean;
  }
  if (!report.entries.empty()) report.mean_of_means /= static_cast<double>(report.entries.size());
  return report;
}

}  // namespace hanabi
