#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace hanabi {

inline constexpr int kNumColors = 5;
inline constexpr int kMaxRank = 5;
inline constexpr int kDeckSize = 50;
inline constexpr int kMaxPlayers = 5;
inline constexpr int kMaxHandSize = 5;
inline constexpr int kMaxScore = 25;
inline constexpr int kStartTokens = 8;
inline constexpr int kStartLives = 3;

// Color order B, R, Y, W, G is the canonical tie-break order everywhere.
inline constexpr std::array<char, kNumColors> kColorLetters = {'B', 'R', 'Y', 'W', 'G'};

// Copies per rank: three 1s, two each of 2/3/4, one 5 (10 cards per color).
inline constexpr int card_copies(int rank) { return rank == 1 ? 3 : (rank == 5 ? 1 : 2); }

struct Card {
  uint8_t color = 0;  // 0..4
  uint8_t rank = 0;   // 1..5

  friend bool operator==(const Card&, const Card&) = default;
};

inline std::string to_string(const Card& c) {
  return std::string(1, kColorLetters[c.color]) + std::to_string(static_cast<int>(c.rank));
}

inline int color_from_letter(char l) {
  for (int c = 0; c < kNumColors; ++c)
    if (kColorLetters[c] == l) return c;
  return -1;
}

// 50 cards in canonical order (color-major, rank ascending, copies adjacent).
inline std::array<Card, kDeckSize> full_deck() {
  std::array<Card, kDeckSize> deck{};
  int n = 0;
  for (uint8_t c = 0; c < kNumColors; ++c)
    for (uint8_t r = 1; r <= kMaxRank; ++r)
      for (int k = 0; k < card_copies(r); ++k) deck[n++] = Card{c, r};
  return deck;
}

}  // namespace hanabi
