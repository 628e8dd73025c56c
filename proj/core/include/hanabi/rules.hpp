#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hanabi/engine.hpp"
#include "hanabi/rng.hpp"
#include "hanabi/state.hpp"

namespace hanabi {

using RuleId = uint16_t;

inline constexpr int kChromosomeLength = 15;

// An agent genome: an ordered rule list, first applicable rule wins.
// Duplicates and shadowed rules are allowed and heritable.
struct Chromosome {
  std::array<RuleId, kChromosomeLength> genes{};

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

std::string to_string(const Chromosome& c);
Chromosome chromosome_from_string(const std::string& s);
uint64_t chromosome_hash(const Chromosome& c);

enum class RuleFamily : uint8_t {
  kPlayIfCertain,
  kPlayProbability,
  kPlayMostRecentlyHinted,
  kTellAboutPlayableCard,
  kTellAboutUselessCard,
  kTellMostInformation,
  kTellAboutOnes,
  kTellAboutFives,
  kTellRandomly,
  kTellToSetSingletonColor,
  kTellToSetSingletonRank,
  kDiscardOldest,
  kDiscardRandom,
  kDiscardUseless,
  kDiscardProbabilityUseless,
  kDiscardHighestRank,
  kDiscardLeastInformation,
};

const char* family_name(RuleFamily f);

struct RuleDef {
  RuleId id = 0;
  RuleFamily family = RuleFamily::kPlayIfCertain;
  double threshold = -1.0;  // probability parameter, families that use one
  int token_gate = -1;      // fires only when hint tokens > gate; -1 = ungated
  std::string name;
};

// The standard catalog: every base rule (play/tell/discard families over
// their parameter grids) in an ungated variant plus one gated variant per
// token threshold. Rule ids are stable for a given catalog version.
class RuleCatalog {
 public:
  RuleCatalog(std::vector<RuleDef> rules, std::string version)
      : rules_(std::move(rules)), version_(std::move(version)) {}

  static const RuleCatalog& standard();

  size_t size() const { return rules_.size(); }
  const RuleDef& rule(RuleId id) const;
  const std::vector<RuleDef>& rules() const { return rules_; }

  const std::string& version() const { return version_; }
  std::string to_json() const;
  uint64_t hash() const;  // of to_json(); pins rule semantics in output files

 private:
  std::vector<RuleDef> rules_;
  std::string version_;
};

// Fraction of card identities consistent with the slot's possibility sets and
// the viewer's unseen-card counts that are immediately playable.
double playability(const PlayerView& view, int slot);

// Same weighting, for identities that can never score (stack already passed
// them or a required lower rank is fully discarded).
double useless_probability(const PlayerView& view, int slot);

// One rule against one view: a legal action or abstention. Deterministic
// given (rule, view) except the Random rules, which consume `rng` only when
// they fire. Throws std::out_of_range for an unknown id.
std::optional<Action> evaluate_rule(const RuleCatalog& catalog, RuleId id, const PlayerView& view,
                                    Rng& rng);

// First non-abstaining rule's action; falls back to discard-oldest, or the
// most-playable slot when discarding is illegal. Total: always legal.
Action agent_act(const RuleCatalog& catalog, const Chromosome& chromosome, const PlayerView& view,
                 Rng& rng);

class RuleAgent : public Agent {
 public:
  RuleAgent(const RuleCatalog& catalog, const Chromosome& chromosome)
      : catalog_(&catalog), chromosome_(chromosome), rng_(0) {}

  void begin_game(uint64_t rule_seed, int seat) override { rng_ = Rng(rule_seed); }
  Action act(const PlayerView& view) override {
    return agent_act(*catalog_, chromosome_, view, rng_);
  }

  const Chromosome& chromosome() const { return chromosome_; }
  void set_chromosome(const Chromosome& c) { chromosome_ = c; }

 private:
  const RuleCatalog* catalog_;
  Chromosome chromosome_;
  Rng rng_;
};

}  // namespace hanabi
