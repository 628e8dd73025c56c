#pragma once

#include <cstdint>
#include <string>

#include "hanabi/cards.hpp"

namespace hanabi {

enum class ActionType : uint8_t { kPlay, kDiscard, kHintColor, kHintRank };

struct Action {
  ActionType type = ActionType::kPlay;
  int8_t slot = -1;    // play/discard: index into the actor's hand, 0 = oldest
  int8_t target = -1;  // hints: receiving player
  int8_t value = -1;   // hints: color 0..4 or rank 1..5

  static Action play(int slot) { return {ActionType::kPlay, static_cast<int8_t>(slot), -1, -1}; }
  static Action discard(int slot) {
    return {ActionType::kDiscard, static_cast<int8_t>(slot), -1, -1};
  }
  static Action hint_color(int target, int color) {
    return {ActionType::kHintColor, -1, static_cast<int8_t>(target), static_cast<int8_t>(color)};
  }
  static Action hint_rank(int target, int rank) {
    return {ActionType::kHintRank, -1, static_cast<int8_t>(target), static_cast<int8_t>(rank)};
  }

  bool is_hint() const { return type == ActionType::kHintColor || type == ActionType::kHintRank; }

  friend bool operator==(const Action&, const Action&) = default;
};

inline std::string to_string(const Action& a) {
  switch (a.type) {
    case ActionType::kPlay:
      return "play " + std::to_string(a.slot);
    case ActionType::kDiscard:
      return "discard " + std::to_string(a.slot);
    case ActionType::kHintColor:
      return "hint p" + std::to_string(a.target) + " color " +
             std::string(1, kColorLetters[a.value]);
    case ActionType::kHintRank:
      return "hint p" + std::to_string(a.target) + " rank " + std::to_string(a.value);
  }
  return "?";
}

// Public facts about one completed turn, as visible to every seat. This is
// all an observer may use for behavior bookkeeping: token availability at
// turn start and, for plays, whether the played card's color/rank were
// publicly pinned down at the moment of play.
struct TurnObservation {
  uint8_t actor = 0;
  Action action;
  uint8_t tokens_before = 0;
  bool played_color_known = false;
  bool played_rank_known = false;
};

}  // namespace hanabi
