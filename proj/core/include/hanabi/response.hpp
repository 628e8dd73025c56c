#pragma once

#include <map>
#include <string>

#include "hanabi/crossplay.hpp"
#include "hanabi/stats.hpp"

namespace hanabi {

// Mean match-up score of one niche's elite against every occupied niche
// (itself included), i.e. its row mean over the population.
double intra_score(const MatchupMatrix& matrix, NicheIndex niche);

// The niche maximizing intra_score; lexicographic (i, j) tie-break.
NicheIndex generalist_niche(const MatchupMatrix& matrix);

struct ResponseTable {
  int bins = kDefaultBins;
  NicheIndex generalist;
  std::map<NicheIndex, NicheIndex> responses;  // partner niche -> best-response niche
  std::string source_population;

  friend bool operator==(const ResponseTable&, const ResponseTable&) = default;
};

// For each occupied partner niche, the occupied niche whose elite scores
// highest with it (lexicographic tie-break), plus the generalist.
ResponseTable response_table(const MatchupMatrix& matrix);

// Occupied niche closest to `target` by Euclidean distance between cell
// centers; lexicographic tie-break. Keeps the table total when an estimated
// niche is unoccupied.
NicheIndex nearest_occupied(const ResponseTable& table, NicheIndex target);

}  // namespace hanabi
