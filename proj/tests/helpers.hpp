#pragma once

#include <stdexcept>
#include <vector>

#include "hanabi/engine.hpp"
#include "hanabi/rng.hpp"

namespace hanabi::test {

// Hand-built fixture states. fill_deck keeps card conservation intact by
// stocking the draw pile with whatever the fixture has not placed elsewhere.
inline GameState blank_state(int players = 2) {
  GameState s;
  s.player_count = static_cast<uint8_t>(players);
  s.hand_size = players <= 3 ? 5 : 4;
  return s;
}

inline void give(GameState& s, int player, const char* card) {
  s.hands[player].push_back(
      Card{static_cast<uint8_t>(color_from_letter(card[0])), static_cast<uint8_t>(card[1] - '0')});
}

inline void fill_deck(GameState& s) {
  std::array<std::array<int, kMaxRank + 1>, kNumColors> used{};
  for (int p = 0; p < s.player_count; ++p)
    for (int i = 0; i < s.hands[p].size; ++i) {
      const Card& c = s.hands[p].slots[i].card;
      ++used[c.color][c.rank];
    }
  for (int c = 0; c < kNumColors; ++c) {
    for (int r = 1; r <= s.fireworks[c]; ++r) ++used[c][r];
    for (int r = 1; r <= kMaxRank; ++r) used[c][r] += s.discards[c][r];
  }
  s.deck_size = 0;
  for (int c = 0; c < kNumColors; ++c)
    for (int r = 1; r <= kMaxRank; ++r) {
      const int left = card_copies(r) - used[c][r];
      if (left < 0) throw std::logic_error("fixture uses more copies than exist");
      for (int k = 0; k < left; ++k)
        s.deck[s.deck_size++] = Card{static_cast<uint8_t>(c), static_cast<uint8_t>(r)};
    }
}

inline void dump_rest_to_discard(GameState& s) {
  fill_deck(s);
  while (s.deck_size > 0) {
    const Card c = s.deck[--s.deck_size];
    ++s.discards[c.color][c.rank];
    s.discard_order[s.discard_size++] = c;
  }
  if (s.final_countdown < 0) s.final_countdown = static_cast<int8_t>(s.player_count);
}

// Enumerates legal actions from the viewer's perspective only; mirrors the
// engine's ordering so mismatches surface as illegal-action throws.
inline std::vector<Action> legal_actions_from_view(const PlayerView& v) {
  std::vector<Action> out;
  const int me = v.viewer();
  for (int s = 0; s < v.hand_size(me); ++s) out.push_back(Action::play(s));
  if (v.hint_tokens() < kStartTokens)
    for (int s = 0; s < v.hand_size(me); ++s) out.push_back(Action::discard(s));
  if (v.hint_tokens() >= 1) {
    for (int t = 0; t < v.player_count(); ++t) {
      if (t == me) continue;
      for (int c = 0; c < kNumColors; ++c) {
        bool touches = false;
        for (int i = 0; i < v.hand_size(t); ++i) touches |= v.card(t, i).color == c;
        if (touches) out.push_back(Action::hint_color(t, c));
      }
      for (int r = 1; r <= kMaxRank; ++r) {
        bool touches = false;
        for (int i = 0; i < v.hand_size(t); ++i) touches |= v.card(t, i).rank == r;
        if (touches) out.push_back(Action::hint_rank(t, r));
      }
    }
  }
  return out;
}

class RandomLegalAgent : public Agent {
 public:
  RandomLegalAgent() : rng_(0) {}
  void begin_game(uint64_t rule_seed, int) override { rng_ = Rng(rule_seed); }
  Action act(const PlayerView& view) override {
    const auto actions = legal_actions_from_view(view);
    return actions[rng_.uniform(static_cast<uint32_t>(actions.size()))];
  }

 private:
  Rng rng_;
};

// Discards its oldest card whenever legal, otherwise gives the first legal
// hint. Never plays, so it never scores and never loses a life.
class DiscardHappyAgent : public Agent {
 public:
  Action act(const PlayerView& view) override {
    if (view.hint_tokens() < kStartTokens) return Action::discard(0);
    for (const Action& a : legal_actions_from_view(view))
      if (a.is_hint()) return a;
    throw std::logic_error("no hint available at full tokens");
  }
};

}  // namespace hanabi::test
