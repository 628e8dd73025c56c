#include "hanabi/response.hpp"

#include <stdexcept>

namespace hanabi {

double intra_score(const MatchupMatrix& matrix, NicheIndex niche) {
  const std::vector<NicheIndex> population = matrix.niches();
  if (!matrix.has(niche, niche)) throw std::out_of_range("niche not in population");
  double sum = 0.0;
  for (const NicheIndex& partner : population) sum += matrix.score(niche, partner);
  return sum / static_cast<double>(population.size());
}

NicheIndex generalist_niche(const MatchupMatrix& matrix) {
  const std::vector<NicheIndex> population = matrix.niches();
  if (population.empty()) throw std::invalid_argument("empty match-up matrix");
  NicheIndex best = population.front();
  double best_score = intra_score(matrix, best);
  for (const NicheIndex& n : population) {
    const double s = intra_score(matrix, n);
    if (s > best_score) {  // lexicographic tie-break: first (i,j) wins
      best_score = s;
      best = n;
    }
  }
  return best;
}

ResponseTable response_table(const MatchupMatrix& matrix) {
  const std::vector<NicheIndex> population = matrix.niches();
  if (population.empty()) throw std::invalid_argument("empty match-up matrix");
  ResponseTable table;
  table.bins = matrix.bins;
  table.source_population = matrix.population_id;
  table.generalist = generalist_niche(matrix);
  for (const NicheIndex& partner : population) {
    NicheIndex best = population.front();
    double best_score = matrix.score(best, partner);
    for (const NicheIndex& candidate : population) {
      const double s = matrix.score(candidate, partner);
      if (s > best_score) {
        best_score = s;
        best = candidate;
      }
    }
    table.responses[partner] = best;
  }
  return table;
}

NicheIndex nearest_occupied(const ResponseTable& table, NicheIndex target) {
  if (table.responses.count(target)) return target;
  if (table.responses.empty()) throw std::invalid_argument("empty response table");
  NicheIndex best{};
  double best_d = -1.0;
  for (const auto& [niche, response] : table.responses) {
    const double di = bin_center(niche.i, table.bins) - bin_center(target.i, table.bins);
    const double dj = bin_center(niche.j, table.bins) - bin_center(target.j, table.bins);
    const double d = di * di + dj * dj;
    if (best_d < 0.0 || d < best_d) {  // map iterates lexicographically: first min wins
      best_d = d;
      best = niche;
    }
  }
  return best;
}

}  // namespace hanabi
