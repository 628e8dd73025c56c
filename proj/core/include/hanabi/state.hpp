#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <span>
#include <string>

#include "hanabi/action.hpp"
#include "hanabi/cards.hpp"
#include "hanabi/knowledge.hpp"

namespace hanabi {

struct HandSlot {
  Card card;
  CardKnowledge know;
};

// Slot 0 is the oldest card; draws append at the newest end and removal
// shifts the remaining cards left.
struct Hand {
  std::array<HandSlot, kMaxHandSize> slots{};
  uint8_t size = 0;

  const HandSlot& operator[](int i) const { return slots[i]; }
  HandSlot& operator[](int i) { return slots[i]; }

  void erase(int i) {
    for (int k = i; k + 1 < size; ++k) slots[k] = slots[k + 1];
    --size;
  }
  void push_back(const Card& c) {
    slots[size] = HandSlot{c, CardKnowledge{}};
    ++size;
  }
};

struct HistoryEntry {
  uint8_t player;
  Action action;
};

// Upper bound on turns in any legal game: plays+discards <= deck+players and
// hints <= 8 + discards + completed fives, which tops out below 100 for every
// player count. 128 leaves slack for the assert in apply().
inline constexpr int kMaxTurns = 128;

// Authoritative game state. Flat storage, no heap; copying is a memcpy, which
// the analysis corpus relies on. Mutation goes through the engine functions.
struct GameState {
  std::array<Card, kDeckSize> deck{};  // deck[deck_size-1] is drawn next
  uint8_t deck_size = 0;

  std::array<Hand, kMaxPlayers> hands{};
  uint8_t player_count = 0;
  uint8_t hand_size = 0;

  std::array<uint8_t, kNumColors> fireworks{};                          // top rank 0..5
  std::array<std::array<uint8_t, kMaxRank + 1>, kNumColors> discards{};  // count by identity
  std::array<Card, kDeckSize> discard_order{};
  uint8_t discard_size = 0;

  uint8_t hint_tokens = kStartTokens;
  uint8_t lives = kStartLives;
  uint8_t current_player = 0;
  int8_t final_countdown = -1;  // -1 inactive; terminal at 0
  uint16_t turn_number = 0;     // actions taken so far

  uint64_t seed = 0;

  std::array<HistoryEntry, kMaxTurns> history{};
  uint16_t history_size = 0;

  int discard_count(int color, int rank) const { return discards[color][rank]; }
  std::span<const Card> discard_pile() const { return {discard_order.data(), discard_size}; }
  std::span<const HistoryEntry> action_history() const { return {history.data(), history_size}; }

  int score() const {
    int s = 0;
    for (int c = 0; c < kNumColors; ++c) s += fireworks[c];
    return s;
  }
};

// One player's observation: partners' cards are visible, the own hand only as
// knowledge, the deck only as a size. A non-owning facade; the accessors are
// the masking boundary and serialize() emits nothing the viewer cannot see.
class PlayerView {
 public:
  PlayerView(const GameState& s, int viewer) : s_(&s), viewer_(viewer) {}

  int viewer() const { return viewer_; }
  int player_count() const { return s_->player_count; }
  int hand_size(int player) const { return s_->hands[player].size; }

  const Card& card(int player, int slot) const {
    assert(player != viewer_ && "own cards are hidden");
    return s_->hands[player].slots[slot].card;
  }
  const CardKnowledge& knowledge(int player, int slot) const {
    return s_->hands[player].slots[slot].know;
  }

  int deck_size() const { return s_->deck_size; }
  int fireworks(int color) const { return s_->fireworks[color]; }
  int hint_tokens() const { return s_->hint_tokens; }
  int lives() const { return s_->lives; }
  int current_player() const { return s_->current_player; }
  int turn_number() const { return s_->turn_number; }
  int final_countdown() const { return s_->final_countdown; }
  int discard_count(int color, int rank) const { return s_->discard_count(color, rank); }
  std::span<const Card> discard_pile() const { return s_->discard_pile(); }
  std::span<const HistoryEntry> action_history() const { return s_->action_history(); }

  // Copies of a card identity still unseen from this seat: total minus
  // discards, minus fireworks, minus partners' visible cards. Own hand and
  // deck cards stay in the pool.
  int unseen_count(int color, int rank) const {
    int n = card_copies(rank) - s_->discards[color][rank];
    if (s_->fireworks[color] >= rank) --n;
    for (int p = 0; p < s_->player_count; ++p) {
      if (p == viewer_) continue;
      const Hand& h = s_->hands[p];
      for (int i = 0; i < h.size; ++i)
        if (h.slots[i].card.color == color && h.slots[i].card.rank == rank) --n;
    }
    return n;
  }

  void serialize(std::string& out) const;
  uint64_t digest() const;

 private:
  const GameState* s_;
  int viewer_;
};

}  // namespace hanabi
