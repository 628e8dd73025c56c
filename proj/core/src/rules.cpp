#include "hanabi/rules.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hanabi {

std::string to_string(const Chromosome& c) {
  std::string out;
  for (int i = 0; i < kChromosomeLength; ++i) {
    if (i) out += ',';
    out += std::to_string(c.genes[i]);
  }
  return out;
}

Chromosome chromosome_from_string(const std::string& s) {
  Chromosome c;
  std::stringstream ss(s);
  std::string tok;
  int i = 0;
  while (std::getline(ss, tok, ',')) {
    if (i >= kChromosomeLength) throw std::invalid_argument("chromosome has more than 15 genes");
    c.genes[i++] = static_cast<RuleId>(std::stoul(tok));
  }
  if (i != kChromosomeLength)
    throw std::invalid_argument("chromosome needs exactly 15 genes, got " + std::to_string(i));
  return c;
}

uint64_t chromosome_hash(const Chromosome& c) {
  uint64_t h = detail::kFnvOffset;
  for (RuleId g : c.genes) h = detail::fnv1a_u64(g, h);
  return h;
}

const char* family_name(RuleFamily f) {
  switch (f) {
    case RuleFamily::kPlayIfCertain: return "PlayIfCertain";
    case RuleFamily::kPlayProbability: return "PlayProbability";
    case RuleFamily::kPlayMostRecentlyHinted: return "PlayMostRecentlyHinted";
    case RuleFamily::kTellAboutPlayableCard: return "TellAboutPlayableCard";
    case RuleFamily::kTellAboutUselessCard: return "TellAboutUselessCard";
    case RuleFamily::kTellMostInformation: return "TellMostInformation";
    case RuleFamily::kTellAboutOnes: return "TellAboutOnes";
    case RuleFamily::kTellAboutFives: return "TellAboutFives";
    case RuleFamily::kTellRandomly: return "TellRandomly";
    case RuleFamily::kTellToSetSingletonColor: return "TellToSetSingletonColor";
    case RuleFamily::kTellToSetSingletonRank: return "TellToSetSingletonRank";
    case RuleFamily::kDiscardOldest: return "DiscardOldest";
    case RuleFamily::kDiscardRandom: return "DiscardRandom";
    case RuleFamily::kDiscardUseless: return "DiscardUseless";
    case RuleFamily::kDiscardProbabilityUseless: return "DiscardProbabilityUseless";
    case RuleFamily::kDiscardHighestRank: return "DiscardHighestRank";
    case RuleFamily::kDiscardLeastInformation: return "DiscardLeastInformation";
  }
  return "?";
}

namespace {

struct BaseRule {
  RuleFamily family;
  double threshold;
};

std::vector<BaseRule> base_rules() {
  std::vector<BaseRule> bases;
  bases.push_back({RuleFamily::kPlayIfCertain, -1.0});
  for (int i = 0; i < 10; ++i) bases.push_back({RuleFamily::kPlayProbability, i / 10.0});
  bases.push_back({RuleFamily::kPlayMostRecentlyHinted, -1.0});
  bases.push_back({RuleFamily::kTellAboutPlayableCard, -1.0});
  bases.push_back({RuleFamily::kTellAboutUselessCard, -1.0});
  bases.push_back({RuleFamily::kTellMostInformation, -1.0});
  bases.push_back({RuleFamily::kTellAboutOnes, -1.0});
  bases.push_back({RuleFamily::kTellAboutFives, -1.0});
  bases.push_back({RuleFamily::kTellRandomly, -1.0});
  bases.push_back({RuleFamily::kTellToSetSingletonColor, -1.0});
  bases.push_back({RuleFamily::kTellToSetSingletonRank, -1.0});
  bases.push_back({RuleFamily::kDiscardOldest, -1.0});
  bases.push_back({RuleFamily::kDiscardRandom, -1.0});
  bases.push_back({RuleFamily::kDiscardUseless, -1.0});
  for (double t : {0.6, 0.8, 1.0}) bases.push_back({RuleFamily::kDiscardProbabilityUseless, t});
  bases.push_back({RuleFamily::kDiscardHighestRank, -1.0});
  bases.push_back({RuleFamily::kDiscardLeastInformation, -1.0});
  return bases;
}

constexpr std::array<int, 5> kTokenGates = {0, 1, 2, 4, 6};

std::string rule_name(const BaseRule& b, int gate) {
  std::string name = family_name(b.family);
  if (b.threshold >= 0.0) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "(%.1f)", b.threshold);
    name += buf;
  }
  if (gate >= 0) name += " if tokens>" + std::to_string(gate);
  return name;
}

RuleCatalog build_standard();

}  // namespace

const RuleCatalog& RuleCatalog::standard() {
  static const RuleCatalog catalog = build_standard();
  return catalog;
}

const RuleDef& RuleCatalog::rule(RuleId id) const {
  if (id >= rules_.size())
    throw std::out_of_range("unknown rule id " + std::to_string(id) + " (catalog size " +
                            std::to_string(rules_.size()) + ")");
  return rules_[id];
}

std::string RuleCatalog::to_json() const {
  nlohmann::json j;
  j["schema"] = version_;
  nlohmann::json arr = nlohmann::json::array();
  for (const RuleDef& r : rules_) {
    nlohmann::json e;
    e["id"] = r.id;
    e["family"] = family_name(r.family);
    if (r.threshold >= 0.0) e["threshold"] = r.threshold;
    if (r.token_gate >= 0) e["token_gate"] = r.token_gate;
    e["name"] = r.name;
    arr.push_back(e);
  }
  j["rules"] = arr;
  return j.dump();
}

uint64_t RuleCatalog::hash() const { return detail::fnv1a(to_json()); }

namespace {

RuleCatalog build_standard() {
  std::vector<RuleDef> rules;
  RuleId id = 0;
  for (const BaseRule& b : base_rules()) {
    rules.push_back({id++, b.family, b.threshold, -1, rule_name(b, -1)});
    for (int gate : kTokenGates)
      rules.push_back({id++, b.family, b.threshold, gate, rule_name(b, gate)});
  }
  return RuleCatalog(std::move(rules), "hanabi-catalog/1");
}

// Per-act scratch: unseen-identity counts and derived card judgements, built
// once and shared by every rule the chromosome tries.
struct EvalContext {
  const PlayerView* view;
  int viewer;
  int hand;                                 // own hand size
  std::array<int, kNumColors> attainable;   // highest rank still reachable per color
  int unseen[kNumColors][kMaxRank + 1];
  // per own slot, counts over identities consistent with the knowledge sets
  int denom[kMaxHandSize];
  int playable_num[kMaxHandSize];
  int useless_num[kMaxHandSize];
  double rank_sum[kMaxHandSize];  // for expected rank

  explicit EvalContext(const PlayerView& v) : view(&v), viewer(v.viewer()) {
    hand = v.hand_size(viewer);
    for (int c = 0; c < kNumColors; ++c) {
      for (int r = 1; r <= kMaxRank; ++r) unseen[c][r] = card_copies(r);
      for (int r = 1; r <= v.fireworks(c); ++r) --unseen[c][r];
      for (int r = 1; r <= kMaxRank; ++r) unseen[c][r] -= v.discard_count(c, r);
    }
    for (int p = 0; p < v.player_count(); ++p) {
      if (p == viewer) continue;
      for (int i = 0; i < v.hand_size(p); ++i) {
        const Card& c = v.card(p, i);
        --unseen[c.color][c.rank];
      }
    }
    for (int c = 0; c < kNumColors; ++c) {
      attainable[c] = kMaxRank;
      for (int r = v.fireworks(c) + 1; r <= kMaxRank; ++r) {
        if (card_copies(r) - v.discard_count(c, r) == 0) {
          attainable[c] = r - 1;
          break;
        }
      }
    }
    for (int slot = 0; slot < hand; ++slot) {
      const CardKnowledge& k = v.knowledge(viewer, slot);
      int den = 0, play = 0, useless = 0;
      double rsum = 0.0;
      for (int c = 0; c < kNumColors; ++c) {
        if (!k.color_possible(c)) continue;
        const int top = v.fireworks(c);
        for (int r = 1; r <= kMaxRank; ++r) {
          if (!k.rank_possible(r)) continue;
          const int n = unseen[c][r];
          if (n <= 0) continue;
          den += n;
          rsum += static_cast<double>(n) * r;
          if (top + 1 == r) play += n;
          if (r <= top || r > attainable[c]) useless += n;
        }
      }
      denom[slot] = den;
      playable_num[slot] = play;
      useless_num[slot] = useless;
      rank_sum[slot] = rsum;
    }
  }

  double playability(int slot) const {
    return denom[slot] > 0 ? static_cast<double>(playable_num[slot]) / denom[slot] : 0.0;
  }
  double useless(int slot) const {
    return denom[slot] > 0 ? static_cast<double>(useless_num[slot]) / denom[slot] : 0.0;
  }
  bool certainly_playable(int slot) const {
    return denom[slot] > 0 && playable_num[slot] == denom[slot];
  }
  bool certainly_useless(int slot) const {
    return denom[slot] > 0 && useless_num[slot] == denom[slot];
  }
  double expected_rank(int slot) const {
    return denom[slot] > 0 ? rank_sum[slot] / denom[slot] : 0.0;
  }
  bool card_playable(const Card& c) const { return view->fireworks(c.color) + 1 == c.rank; }
  bool card_dead(const Card& c) const {
    return c.rank <= view->fireworks(c.color) || c.rank > attainable[c.color];
  }
};

std::optional<Action> play_if_certain(const EvalContext& ctx) {
  for (int s = 0; s < ctx.hand; ++s)
    if (ctx.certainly_playable(s)) return Action::play(s);
  return std::nullopt;
}

std::optional<Action> play_probability(const EvalContext& ctx, double threshold) {
  int best = -1;
  double best_p = -1.0;
  for (int s = 0; s < ctx.hand; ++s) {
    const double p = ctx.playability(s);
    if (p > best_p) {
      best_p = p;
      best = s;
    }
  }
  if (best >= 0 && best_p > threshold) return Action::play(best);
  return std::nullopt;
}

std::optional<Action> play_most_recently_hinted(const EvalContext& ctx) {
  const PlayerView& v = *ctx.view;
  int best = -1, best_turn = -1;
  for (int s = 0; s < ctx.hand; ++s) {
    const int t = v.knowledge(ctx.viewer, s).last_hinted_turn;
    if (t > best_turn) {
      best_turn = t;
      best = s;
    }
  }
  if (best_turn >= 0) return Action::play(best);
  return std::nullopt;
}

// Canonical hint enumeration: target ascending, color hints B..G, then rank
// hints 1..5. `fn` returns true to stop at the current hint.
template <typename Fn>
std::optional<Action> first_hint(const PlayerView& v, Fn&& fn) {
  for (int t = 0; t < v.player_count(); ++t) {
    if (t == v.viewer()) continue;
    for (int c = 0; c < kNumColors; ++c) {
      bool touches = false;
      for (int i = 0; i < v.hand_size(t); ++i) touches |= v.card(t, i).color == c;
      if (touches && fn(Action::hint_color(t, c))) return Action::hint_color(t, c);
    }
    for (int r = 1; r <= kMaxRank; ++r) {
      bool touches = false;
      for (int i = 0; i < v.hand_size(t); ++i) touches |= v.card(t, i).rank == r;
      if (touches && fn(Action::hint_rank(t, r))) return Action::hint_rank(t, r);
    }
  }
  return std::nullopt;
}

// New information delivered by a hint: touched cards whose hinted dimension
// was not yet pinned, plus untouched cards that still held the hinted value
// as a possibility.
int hint_information(const PlayerView& v, const Action& a) {
  const bool by_color = a.type == ActionType::kHintColor;
  int info = 0;
  for (int i = 0; i < v.hand_size(a.target); ++i) {
    const Card& card = v.card(a.target, i);
    const CardKnowledge& k = v.knowledge(a.target, i);
    const bool touched = by_color ? card.color == a.value : card.rank == a.value;
    if (touched) {
      if (by_color ? !k.color_known() : !k.rank_known()) ++info;
    } else {
      if (by_color ? k.color_possible(a.value) : k.rank_possible(a.value)) ++info;
    }
  }
  return info;
}

std::optional<Action> tell_about_card(const EvalContext& ctx, bool playable_target) {
  const PlayerView& v = *ctx.view;
  for (int t = 0; t < v.player_count(); ++t) {
    if (t == v.viewer()) continue;
    for (int i = 0; i < v.hand_size(t); ++i) {
      const Card& card = v.card(t, i);
      if (playable_target ? !ctx.card_playable(card) : !ctx.card_dead(card)) continue;
      const CardKnowledge& k = v.knowledge(t, i);
      if (!k.color_known()) return Action::hint_color(t, card.color);
      if (!k.rank_known()) return Action::hint_rank(t, card.rank);
    }
  }
  return std::nullopt;
}

std::optional<Action> tell_most_information(const EvalContext& ctx) {
  const PlayerView& v = *ctx.view;
  int best_info = 0;
  std::optional<Action> best;
  first_hint(v, [&](const Action& a) {
    const int info = hint_information(v, a);
    if (info > best_info) {
      best_info = info;
      best = a;
    }
    return false;  // scan everything
  });
  return best;
}

std::optional<Action> tell_about_rank(const EvalContext& ctx, int rank) {
  const PlayerView& v = *ctx.view;
  for (int t = 0; t < v.player_count(); ++t) {
    if (t == v.viewer()) continue;
    bool news = false;
    for (int i = 0; i < v.hand_size(t); ++i)
      news |= v.card(t, i).rank == rank && !v.knowledge(t, i).rank_known();
    if (news) return Action::hint_rank(t, rank);
  }
  return std::nullopt;
}

std::optional<Action> tell_randomly(const EvalContext& ctx, Rng& rng) {
  const PlayerView& v = *ctx.view;
  Action options[(kNumColors + kMaxRank) * (kMaxPlayers - 1)];
  int n = 0;
  first_hint(v, [&](const Action& a) {
    options[n++] = a;
    return false;
  });
  if (n == 0) return std::nullopt;
  return options[rng.uniform(static_cast<uint32_t>(n))];
}

std::optional<Action> tell_to_set_singleton(const EvalContext& ctx, bool color_dim) {
  const PlayerView& v = *ctx.view;
  return first_hint(v, [&](const Action& a) {
    const bool by_color = a.type == ActionType::kHintColor;
    if (by_color != color_dim) return false;
    for (int i = 0; i < v.hand_size(a.target); ++i) {
      const Card& card = v.card(a.target, i);
      const CardKnowledge& k = v.knowledge(a.target, i);
      const bool touched = by_color ? card.color == a.value : card.rank == a.value;
      if (touched) {
        if (by_color ? !k.color_known() : !k.rank_known()) return true;
      } else {
        // Negative information completing a two-element set also counts.
        if (by_color ? (k.color_possible(a.value) && std::popcount(k.color_mask) == 2)
                     : (k.rank_possible(a.value) && std::popcount(k.rank_mask) == 2))
          return true;
      }
    }
    return false;
  });
}

std::optional<Action> discard_useless(const EvalContext& ctx) {
  for (int s = 0; s < ctx.hand; ++s)
    if (ctx.certainly_useless(s)) return Action::discard(s);
  return std::nullopt;
}

std::optional<Action> discard_probability_useless(const EvalContext& ctx, double threshold) {
  int best = -1;
  double best_p = -1.0;
  for (int s = 0; s < ctx.hand; ++s) {
    const double p = ctx.useless(s);
    if (p > best_p) {
      best_p = p;
      best = s;
    }
  }
  if (best >= 0 && best_p >= threshold) return Action::discard(best);
  return std::nullopt;
}

std::optional<Action> discard_highest_rank(const EvalContext& ctx) {
  int best = -1;
  double best_r = -1.0;
  for (int s = 0; s < ctx.hand; ++s) {
    const double r = ctx.expected_rank(s);
    if (r > best_r) {
      best_r = r;
      best = s;
    }
  }
  if (best < 0) return std::nullopt;
  return Action::discard(best);
}

std::optional<Action> discard_least_information(const EvalContext& ctx) {
  const PlayerView& v = *ctx.view;
  int best = -1, best_pieces = 3;
  for (int s = 0; s < ctx.hand; ++s) {
    const int pieces = v.knowledge(ctx.viewer, s).pieces_known();
    if (pieces < best_pieces) {
      best_pieces = pieces;
      best = s;
    }
  }
  if (best < 0) return std::nullopt;
  return Action::discard(best);
}

std::optional<Action> evaluate_with_context(const RuleDef& def, const EvalContext& ctx,
                                            Rng& rng) {
  const PlayerView& v = *ctx.view;
  const int tokens = v.hint_tokens();
  if (def.token_gate >= 0 && tokens <= def.token_gate) return std::nullopt;

  const bool can_hint = tokens >= 1;
  const bool can_discard = tokens < kStartTokens;

  switch (def.family) {
    case RuleFamily::kPlayIfCertain:
      return play_if_certain(ctx);
    case RuleFamily::kPlayProbability:
      return play_probability(ctx, def.threshold);
    case RuleFamily::kPlayMostRecentlyHinted:
      return play_most_recently_hinted(ctx);
    case RuleFamily::kTellAboutPlayableCard:
      return can_hint ? tell_about_card(ctx, true) : std::nullopt;
    case RuleFamily::kTellAboutUselessCard:
      return can_hint ? tell_about_card(ctx, false) : std::nullopt;
    case RuleFamily::kTellMostInformation:
      return can_hint ? tell_most_information(ctx) : std::nullopt;
    case RuleFamily::kTellAboutOnes:
      return can_hint ? tell_about_rank(ctx, 1) : std::nullopt;
    case RuleFamily::kTellAboutFives:
      return can_hint ? tell_about_rank(ctx, kMaxRank) : std::nullopt;
    case RuleFamily::kTellRandomly:
      return can_hint ? tell_randomly(ctx, rng) : std::nullopt;
    case RuleFamily::kTellToSetSingletonColor:
      return can_hint ? tell_to_set_singleton(ctx, true) : std::nullopt;
    case RuleFamily::kTellToSetSingletonRank:
      return can_hint ? tell_to_set_singleton(ctx, false) : std::nullopt;
    case RuleFamily::kDiscardOldest:
      return can_discard ? std::optional<Action>(Action::discard(0)) : std::nullopt;
    case RuleFamily::kDiscardRandom:
      if (!can_discard) return std::nullopt;
      return Action::discard(static_cast<int>(rng.uniform(static_cast<uint32_t>(ctx.hand))));
    case RuleFamily::kDiscardUseless:
      return can_discard ? discard_useless(ctx) : std::nullopt;
    case RuleFamily::kDiscardProbabilityUseless:
      return can_discard ? discard_probability_useless(ctx, def.threshold) : std::nullopt;
    case RuleFamily::kDiscardHighestRank:
      return can_discard ? discard_highest_rank(ctx) : std::nullopt;
    case RuleFamily::kDiscardLeastInformation:
      return can_discard ? discard_least_information(ctx) : std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

double playability(const PlayerView& view, int slot) {
  EvalContext ctx(view);
  return ctx.playability(slot);
}

double useless_probability(const PlayerView& view, int slot) {
  EvalContext ctx(view);
  return ctx.useless(slot);
}

std::optional<Action> evaluate_rule(const RuleCatalog& catalog, RuleId id, const PlayerView& view,
                                    Rng& rng) {
  const RuleDef& def = catalog.rule(id);
  EvalContext ctx(view);
  return evaluate_with_context(def, ctx, rng);
}

Action agent_act(const RuleCatalog& catalog, const Chromosome& chromosome, const PlayerView& view,
                 Rng& rng) {
  EvalContext ctx(view);
  for (RuleId id : chromosome.genes) {
    if (auto a = evaluate_with_context(catalog.rule(id), ctx, rng)) return *a;
  }
  // Fallback keeps the agent total.
  if (view.hint_tokens() < kStartTokens) return Action::discard(0);
  int best = 0;
  double best_p = -1.0;
  for (int s = 0; s < ctx.hand; ++s) {
    const double p = ctx.playability(s);
    if (p > best_p) {
      best_p = p;
      best = s;
    }
  }
  return Action::play(best);
}

}  // namespace hanabi
