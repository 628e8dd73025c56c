#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "hanabi/map_elites.hpp"
#include "hanabi/response.hpp"
#include "hanabi/rules.hpp"

namespace hanabi {

// Public-information book-keeping about one partner, optionally persisted
// across games under a partner id.
struct PartnerModel {
  std::string partner_id;
  PlayStats stats;
  uint64_t turns_observed = 0;

  friend bool operator==(const PartnerModel&, const PartnerModel&) = default;
};

struct NicheEstimate {
  std::optional<BehaviorDescriptor> desc;  // nullopt until both denominators > 0
  uint64_t confidence = 0;                 // partner turns observed
};

inline NicheEstimate estimate_niches(const PartnerModel& model) {
  return NicheEstimate{descriptor(model.stats), model.turns_observed};
}

inline void update_partner_model(PartnerModel& model, const TurnObservation& obs) {
  record_turn(model.stats, obs);
  ++model.turns_observed;
}

enum class MetaMode : uint8_t { kOracle, kGeneralist, kAdaptive };

inline constexpr uint64_t kThresholdInfinite = std::numeric_limits<uint64_t>::max();

struct MetaConfig {
  MetaMode mode = MetaMode::kAdaptive;
  uint64_t confidence_threshold = 0;  // adaptive acts specialized when confidence > threshold
  bool persist_across_games = true;   // keep the partner model between games
};

// Selects which archive elite to impersonate each turn: the specialized
// response to the partner's true niche (oracle), the generalist (generalist
// mode, low confidence, or undefined estimate), or the response to the
// nearest occupied niche of the running estimate (adaptive).
class MetaAgent : public Agent {
 public:
  MetaAgent(const RuleCatalog& catalog, const Archive& archive, const ResponseTable& table,
            const MetaConfig& config);

  // Oracle mode input: the partner's true behavioral niche.
  void set_true_partner_niche(NicheIndex niche) { true_partner_niche_ = niche; }

  // Starts tracking a new partner; always resets the model.
  void set_partner(const std::string& partner_id);

  void begin_game(uint64_t rule_seed, int seat) override;
  Action act(const PlayerView& view) override;
  void observe(const TurnObservation& obs) override;

  const PartnerModel& partner_model() const { return model_; }
  NicheEstimate current_estimate() const { return estimate_niches(model_); }
  NicheIndex chosen_niche() const { return chosen_niche_; }  // last act()'s elite

 private:
  const Chromosome& elite_at(NicheIndex niche) const;
  NicheIndex select_niche() const;

  const RuleCatalog* catalog_;
  const Archive* archive_;
  ResponseTable table_;
  MetaConfig config_;
  std::optional<NicheIndex> true_partner_niche_;
  PartnerModel model_;
  int seat_ = -1;
  Rng rng_;
  NicheIndex chosen_niche_;
};

struct MetaEvalPartnerResult {
  NicheIndex partner;               // the partner's true niche in its archive
  double mean = 0.0;
  double sd = 0.0;
  int games = 0;
  // Adaptive diagnostics: final estimate vs the partner's self-play descriptor.
  std::optional<BehaviorDescriptor> estimated;
  BehaviorDescriptor truth;
};

struct MetaEvalReport {
  MetaMode mode = MetaMode::kGeneralist;
  uint64_t confidence_threshold = 0;
  bool persist_across_games = true;
  int games_per_partner = 0;
  std::vector<MetaEvalPartnerResult> partners;
  double mean_score = 0.0;  // over all games
  // Mean absolute and signed estimation errors over partners with a defined
  // final estimate (adaptive mode diagnostic).
  double mae_ipp = 0.0;
  double mae_comm = 0.0;
  double signed_ipp = 0.0;
  double signed_comm = 0.0;
  int estimated_partners = 0;
};

// Plays `games` seeded games between a fresh meta-agent instance and each
// elite of the opponents archive. The partner model persists across one
// partner's games when configured; it never leaks between partners.
MetaEvalReport meta_eval(const RuleCatalog& catalog, const Archive& training,
                         const ResponseTable& table, const Archive& opponents,
                         const MetaConfig& config, int games, uint64_t master_seed,
                         int threads = 1,
                         std::span<const NicheIndex> partner_subset = {});

}  // namespace hanabi
