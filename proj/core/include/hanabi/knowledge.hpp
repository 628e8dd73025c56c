#pragma once

#include <bit>
#include <cstdint>

#include "hanabi/cards.hpp"

namespace hanabi {

// What a player publicly knows about one of their own cards, from hints only
// (positive and negative). Possibility sets are bitmasks; they never go empty
// while the card is held, and the true identity is always a member.
struct CardKnowledge {
  uint8_t color_mask = 0x1F;        // bit c set -> color c still possible
  uint8_t rank_mask = 0x3E;         // bit r set -> rank r still possible (bits 1..5)
  bool color_hinted = false;        // touched by a color hint
  bool rank_hinted = false;         // touched by a rank hint
  int16_t last_hinted_turn = -1;    // most recent turn a hint touched this card

  bool color_possible(int c) const { return (color_mask >> c) & 1; }
  bool rank_possible(int r) const { return (rank_mask >> r) & 1; }

  bool color_known() const { return std::popcount(color_mask) == 1; }
  bool rank_known() const { return std::popcount(rank_mask) == 1; }

  // Singleton value, or -1 when still ambiguous.
  int known_color() const { return color_known() ? std::countr_zero(color_mask) : -1; }
  int known_rank() const { return rank_known() ? std::countr_zero(rank_mask) : -1; }

  int pieces_known() const { return (color_known() ? 1 : 0) + (rank_known() ? 1 : 0); }

  void set_color(int c) {
    color_mask = static_cast<uint8_t>(1u << c);
    color_hinted = true;
  }
  void set_rank(int r) {
    rank_mask = static_cast<uint8_t>(1u << r);
    rank_hinted = true;
  }
  void exclude_color(int c) { color_mask &= static_cast<uint8_t>(~(1u << c)); }
  void exclude_rank(int r) { rank_mask &= static_cast<uint8_t>(~(1u << r)); }

  friend bool operator==(const CardKnowledge&, const CardKnowledge&) = default;
};

}  // namespace hanabi
