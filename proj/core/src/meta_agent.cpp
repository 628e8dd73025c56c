#include "hanabi/meta_agent.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace hanabi {

MetaAgent::MetaAgent(const RuleCatalog& catalog, const Archive& archive,
                     const ResponseTable& table, const MetaConfig& config)
    : catalog_(&catalog),
      archive_(&archive),
      table_(table),
      config_(config),
      rng_(0),
      chosen_niche_(table.generalist) {
  if (config.mode == MetaMode::kGeneralist) config_.confidence_threshold = kThresholdInfinite;
}

void MetaAgent::set_partner(const std::string& partner_id) {
  model_ = PartnerModel{};
  model_.partner_id = partner_id;
  true_partner_niche_.reset();
}

void MetaAgent::begin_game(uint64_t rule_seed, int seat) {
  rng_ = Rng(rule_seed);
  seat_ = seat;
  if (!config_.persist_across_games) {
    const std::string id = model_.partner_id;
    model_ = PartnerModel{};
    model_.partner_id = id;
  }
}

const Chromosome& MetaAgent::elite_at(NicheIndex niche) const {
  const auto& cell = archive_->cell(niche);
  if (!cell) throw std::logic_error("meta-agent selected an unoccupied niche");
  return cell->chromosome;
}

NicheIndex MetaAgent::select_niche() const {
  switch (config_.mode) {
    case MetaMode::kOracle: {
      if (!true_partner_niche_) throw std::logic_error("oracle mode needs the true partner niche");
      const NicheIndex known = nearest_occupied(table_, *true_partner_niche_);
      return table_.responses.at(known);
    }
    case MetaMode::kGeneralist:
      return table_.generalist;
    case MetaMode::kAdaptive: {
      const NicheEstimate est = estimate_niches(model_);
      if (!est.desc || est.confidence <= config_.confidence_threshold)
        return table_.generalist;
      const NicheIndex estimated = niche(*est.desc, table_.bins);
      return table_.responses.at(nearest_occupied(table_, estimated));
    }
  }
  return table_.generalist;
}

Action MetaAgent::act(const PlayerView& view) {
  chosen_niche_ = select_niche();
  return agent_act(*catalog_, elite_at(chosen_niche_), view, rng_);
}

void MetaAgent::observe(const TurnObservation& obs) {
  if (obs.actor != seat_) update_partner_model(model_, obs);
}

MetaEvalReport meta_eval(const RuleCatalog& catalog, const Archive& training,
                         const ResponseTable& table, const Archive& opponents,
                         const MetaConfig& config, int games, uint64_t master_seed, int threads,
                         std::span<const NicheIndex> partner_subset) {
  if (training.config.players != 2 || opponents.config.players != 2)
    throw std::invalid_argument("meta_eval is a 2-player protocol");

  MetaEvalReport report;
  report.mode = config.mode;
  report.confidence_threshold = config.confidence_threshold;
  report.persist_across_games = config.persist_across_games;
  report.games_per_partner = games;

  const std::vector<NicheIndex> partners =
      partner_subset.empty() ? opponents.occupied()
                             : std::vector<NicheIndex>(partner_subset.begin(), partner_subset.end());
  report.partners.resize(partners.size());

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t k = next.fetch_add(1);
      if (k >= partners.size()) return;
      const NicheIndex p = partners[k];
      const ArchiveEntry& partner_entry = *opponents.cell(p);

      MetaAgent meta(catalog, training, table, config);
      meta.set_partner("partner-" + std::to_string(opponents.linear(p)));
      meta.set_true_partner_niche(p);
      RuleAgent partner(catalog, partner_entry.chromosome);

      double sum = 0.0, sum_sq = 0.0;
      for (int g = 0; g < games; ++g) {
        const uint64_t seed =
            stream_seed(master_seed, "meta-eval", opponents.linear(p), static_cast<uint64_t>(g));
        const bool swap = (stream_seed(seed, "seating") & 1) != 0;
        GameRecord rec = swap ? play_game(partner, meta, seed) : play_game(meta, partner, seed);
        sum += rec.final_score;
        sum_sq += static_cast<double>(rec.final_score) * rec.final_score;
      }

      MetaEvalPartnerResult& r = report.partners[k];
      r.partner = p;
      r.games = games;
      r.mean = games > 0 ? sum / games : 0.0;
      const double var = games > 0 ? sum_sq / games - r.mean * r.mean : 0.0;
      r.sd = var > 0.0 ? std::sqrt(var) : 0.0;
      r.truth = partner_entry.desc;
      r.estimated = meta.current_estimate().desc;
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  double score_sum = 0.0;
  for (const MetaEvalPartnerResult& r : report.partners) {
    score_sum += r.mean;
    if (r.estimated) {
      ++report.estimated_partners;
      report.mae_ipp += std::abs(r.estimated->ipp - r.truth.ipp);
      report.mae_comm += std::abs(r.estimated->communicativeness - r.truth.communicativeness);
      report.signed_ipp += r.estimated->ipp - r.truth.ipp;
      report.signed_comm += r.estimated->communicativeness - r.truth.communicativeness;
    }
  }
  if (!report.partners.empty())
    report.mean_score = score_sum / static_cast<double>(report.partners.size());
  if (report.estimated_partners > 0) {
    report.mae_ipp /= report.estimated_partners;
    report.mae_comm /= report.estimated_partners;
    report.signed_ipp /= report.estimated_partners;
    report.signed_comm /= report.estimated_partners;
  }
  return report;
}

}  // namespace hanabi
