#pragma once

#include <cstdint>
#include <optional>

#include "hanabi/action.hpp"

namespace hanabi {

// Raw counters behind the behavior descriptor. Everything here is computable
// from public information only.
struct PlayStats {
  uint64_t pieces_known_sum = 0;  // 0..2 per played card
  uint64_t cards_played = 0;      // play actions, successful or not
  uint64_t hints_given = 0;
  uint64_t turns_with_token = 0;  // turns with a hint token available at start

  PlayStats& operator+=(const PlayStats& o) {
    pieces_known_sum += o.pieces_known_sum;
    cards_played += o.cards_played;
    hints_given += o.hints_given;
    turns_with_token += o.turns_with_token;
    return *this;
  }
  friend bool operator==(const PlayStats&, const PlayStats&) = default;
};

// Token availability is measured at turn start, before the action. Play
// knowledge is evaluated at the moment of play.
inline void record_turn(PlayStats& stats, const TurnObservation& obs) {
  if (obs.tokens_before > 0) {
    ++stats.turns_with_token;
    if (obs.action.is_hint()) ++stats.hints_given;
  }
  if (obs.action.type == ActionType::kPlay) {
    ++stats.cards_played;
    stats.pieces_known_sum +=
        (obs.played_color_known ? 1 : 0) + (obs.played_rank_known ? 1 : 0);
  }
}

struct BehaviorDescriptor {
  double ipp = 0.0;                // information per play, [0,1]
  double communicativeness = 0.0;  // hints over token-turns, [0,1]

  friend bool operator==(const BehaviorDescriptor&, const BehaviorDescriptor&) = default;
};

// Undefined (nullopt) when a denominator is zero; such agents are not
// placeable in the archive.
inline std::optional<BehaviorDescriptor> descriptor(const PlayStats& s) {
  if (s.cards_played == 0 || s.turns_with_token == 0) return std::nullopt;
  return BehaviorDescriptor{
      static_cast<double>(s.pieces_known_sum) / (2.0 * static_cast<double>(s.cards_played)),
      static_cast<double>(s.hints_given) / static_cast<double>(s.turns_with_token)};
}

struct NicheIndex {
  int i = 0;  // IPP axis
  int j = 0;  // Communicativeness axis

  friend bool operator==(const NicheIndex&, const NicheIndex&) = default;
  friend auto operator<=>(const NicheIndex&, const NicheIndex&) = default;
};

inline constexpr int kDefaultBins = 20;

inline int bin_of(double value, int bins) {
  int b = static_cast<int>(value * bins);  // floor for non-negative inputs
  if (b >= bins) b = bins - 1;             // value == 1.0 belongs to the top bin
  if (b < 0) b = 0;
  return b;
}

inline NicheIndex niche(const BehaviorDescriptor& d, int bins = kDefaultBins) {
  return NicheIndex{bin_of(d.ipp, bins), bin_of(d.communicativeness, bins)};
}

// Center of a cell, used for nearest-occupied-niche lookups.
inline double bin_center(int index, int bins) { return (index + 0.5) / bins; }

}  // namespace hanabi
