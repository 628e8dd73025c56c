#include <doctest.h>

#include "../helpers.hpp"
#include "hanabi/meta_agent.hpp"
#include "hanabi/serialize.hpp"

using namespace hanabi;

namespace {

MatchupMatrix toy_matrix() {
  MatchupMatrix m;
  m.bins = 20;
  m.games_per_pair = 1;
  const NicheIndex a{0, 0}, b{1, 1};
  m.pairs.push_back({a, a, 10.0, 0.0, 1});
  m.pairs.push_back({a, b, 6.0, 0.0, 1});
  m.pairs.push_back({b, b, 2.0, 0.0, 1});
  return m;
}

// Random matrices over a 10x10 grid with coarse integer scores so argmax
// tie-breaks actually trigger.
MatchupMatrix random_matrix(Rng& rng) {
  MatchupMatrix m;
  m.bins = 10;
  m.games_per_pair = 1;
  std::vector<NicheIndex> niches;
  for (int i = 0; i < m.bins; ++i)
    for (int j = 0; j < m.bins; ++j)
      if (rng.bernoulli(0.2)) niches.push_back({i, j});
  if (niches.size() < 2) niches = {{0, 1}, {2, 3}};
  for (size_t x = 0; x < niches.size(); ++x)
    for (size_t y = x; y < niches.size(); ++y)
      m.pairs.push_back(
          {niches[x], niches[y], static_cast<double>(rng.uniform(6)), 0.0, 1});
  return m;
}

EvolutionConfig tiny_config() {
  EvolutionConfig cfg;
  cfg.total_candidates = 80;
  cfg.random_phase = 10;
  cfg.games_per_eval = 10;
  cfg.checkpoint_interval = 0;
  return cfg;
}

struct TrainedFixture {
  Archive archive;
  MatchupMatrix matrix;
  ResponseTable table;
};

const TrainedFixture& trained() {
  static const TrainedFixture f = [] {
    TrainedFixture t{run_evolution(tiny_config(), 4242, RuleCatalog::standard()), {}, {}};
    t.matrix = matchup_matrix(t.archive, RuleCatalog::standard(), 10, 77);
    t.table = response_table(t.matrix);
    return t;
  }();
  return f;
}

}  // namespace

TEST_SUITE_BEGIN("meta");

TEST_CASE("intra scores on the toy matrix") {
  const MatchupMatrix m = toy_matrix();
  CHECK(intra_score(m, {0, 0}) == 8.0);
  CHECK(intra_score(m, {1, 1}) == 4.0);
  CHECK(generalist_niche(m) == NicheIndex{0, 0});
  CHECK_THROWS_AS(intra_score(m, {5, 5}), std::out_of_range);
}

TEST_CASE("single-agent populations: intra equals self-play") {
  MatchupMatrix m;
  m.bins = 20;
  m.pairs.push_back({{4, 7}, {4, 7}, 12.5, 0.0, 1});
  CHECK(intra_score(m, {4, 7}) == 12.5);
  CHECK(generalist_niche(m) == NicheIndex{4, 7});
}

TEST_CASE("response table on the toy matrix") {
  const ResponseTable t = response_table(toy_matrix());
  CHECK(t.generalist == NicheIndex{0, 0});
  CHECK(t.responses.at({0, 0}) == NicheIndex{0, 0});
  CHECK(t.responses.at({1, 1}) == NicheIndex{0, 0});  // 6 > 2
}

TEST_CASE("all-equal intra scores break ties lexicographically") {
  MatchupMatrix m;
  m.bins = 20;
  const std::vector<NicheIndex> ns = {{2, 3}, {2, 9}, {5, 1}};
  for (size_t x = 0; x < ns.size(); ++x)
    for (size_t y = x; y < ns.size(); ++y) m.pairs.push_back({ns[x], ns[y], 4.0, 0.0, 1});
  CHECK(generalist_niche(m) == NicheIndex{2, 3});
  const ResponseTable t = response_table(m);
  for (const auto& [partner, resp] : t.responses) CHECK(resp == NicheIndex{2, 3});
}

TEST_CASE("generalist and responses match a brute-force double loop") {
  Rng rng(2025);
  for (int trial = 0; trial < 50; ++trial) {
    const MatchupMatrix m = random_matrix(rng);
    const std::vector<NicheIndex> pop = m.niches();

    // brute force Eq. 1-3, written independently of the implementation
    NicheIndex best_gen = pop.front();
    double best_intra = -1.0;
    for (const NicheIndex& n : pop) {
      double sum = 0.0;
      for (const NicheIndex& p : pop) sum += m.score(n, p);
      const double intra = sum / static_cast<double>(pop.size());
      if (intra > best_intra) {
        best_intra = intra;
        best_gen = n;
      }
    }
    CHECK(generalist_niche(m) == best_gen);
    CHECK(intra_score(m, best_gen) == doctest::Approx(best_intra).epsilon(1e-12));

    const ResponseTable t = response_table(m);
    CHECK(t.generalist == best_gen);
    for (const NicheIndex& partner : pop) {
      NicheIndex best = pop.front();
      double best_score = -1.0;
      for (const NicheIndex& candidate : pop) {
        const double s = m.score(candidate, partner);
        if (s > best_score) {
          best_score = s;
          best = candidate;
        }
      }
      CHECK(t.responses.at(partner) == best);
      // dominance: the response is at least as good as any fixed policy
      CHECK(m.score(t.responses.at(partner), partner) >= m.score(t.generalist, partner));
    }
  }
}

TEST_CASE("nearest occupied niche by center distance, lexicographic ties") {
  ResponseTable t;
  t.bins = 20;
  t.generalist = {0, 0};
  t.responses[{0, 0}] = {0, 0};
  t.responses[{10, 10}] = {0, 0};
  CHECK(nearest_occupied(t, {0, 0}) == NicheIndex{0, 0});      // already occupied
  CHECK(nearest_occupied(t, {9, 9}) == NicheIndex{10, 10});
  CHECK(nearest_occupied(t, {1, 1}) == NicheIndex{0, 0});
  // equidistant from both: lexicographically first wins
  CHECK(nearest_occupied(t, {5, 5}) == NicheIndex{0, 0});
}

TEST_CASE("estimate from a full recorded game equals the recount of that seat") {
  const TrainedFixture& f = trained();
  const NicheIndex p = f.archive.occupied().front();
  RuleAgent x(RuleCatalog::standard(), f.archive.cell(p)->chromosome);
  RuleAgent y(RuleCatalog::standard(), f.archive.cell(p)->chromosome);
  PlayOptions opts;
  opts.record_turns = true;
  const GameRecord rec = play_game(x, y, 9090, opts);

  PartnerModel model;
  for (const TurnEntry& t : rec.turns) {
    if (t.player != 1) continue;
    TurnObservation o;
    o.actor = t.player;
    o.action = t.action;
    o.tokens_before = t.tokens_before;
    o.played_color_known = t.events.played_color_known;
    o.played_rank_known = t.events.played_rank_known;
    update_partner_model(model, o);
  }
  CHECK(model.stats == rec.stats[1]);
  const NicheEstimate est = estimate_niches(model);
  const auto direct = descriptor(rec.stats[1]);
  CHECK(est.desc == direct);
  uint64_t partner_turns = 0;
  for (const TurnEntry& t : rec.turns) partner_turns += t.player == 1;
  CHECK(est.confidence == partner_turns);
}

TEST_CASE("zero observations mean zero confidence and no estimate") {
  PartnerModel model;
  const NicheEstimate est = estimate_niches(model);
  CHECK(!est.desc.has_value());
  CHECK(est.confidence == 0);
}

TEST_CASE("an infinite threshold is bitwise the generalist elite") {
  const TrainedFixture& f = trained();
  const RuleCatalog& cat = RuleCatalog::standard();
  const NicheIndex partner_niche = f.archive.occupied().back();
  const Chromosome partner_chromosome = f.archive.cell(partner_niche)->chromosome;
  const Chromosome generalist_chromosome = f.archive.cell(f.table.generalist)->chromosome;

  MetaConfig cfg;
  cfg.mode = MetaMode::kAdaptive;
  cfg.confidence_threshold = kThresholdInfinite;
  PlayOptions opts;
  opts.record_turns = true;
  for (uint64_t seed = 100; seed < 110; ++seed) {
    MetaAgent meta(cat, f.archive, f.table, cfg);
    meta.set_partner("p");
    RuleAgent partner1(cat, partner_chromosome);
    const GameRecord r1 = play_game(meta, partner1, seed, opts);

    RuleAgent generalist_agent(cat, generalist_chromosome);
    RuleAgent partner2(cat, partner_chromosome);
    const GameRecord r2 = play_game(generalist_agent, partner2, seed, opts);
    CHECK(record_to_jsonl(r1) == record_to_jsonl(r2));
  }
}

TEST_CASE("generalist mode forces the threshold to infinity") {
  const TrainedFixture& f = trained();
  MetaConfig cfg;
  cfg.mode = MetaMode::kGeneralist;
  cfg.confidence_threshold = 0;
  MetaAgent meta(RuleCatalog::standard(), f.archive, f.table, cfg);
  meta.set_partner("p");
  PartnerModel loaded;
  // even a rich model must not switch the generalist away
  GameState s = new_game(GameConfig{2}, 5);
  meta.begin_game(1, s.current_player);
  meta.act(PlayerView(s, s.current_player));
  CHECK(meta.chosen_niche() == f.table.generalist);
}

TEST_CASE("a zero threshold switches to the specialized response immediately") {
  const TrainedFixture& f = trained();
  const RuleCatalog& cat = RuleCatalog::standard();
  const NicheIndex partner_niche = f.archive.occupied().back();

  MetaConfig cfg;
  cfg.mode = MetaMode::kAdaptive;
  cfg.confidence_threshold = 0;
  cfg.persist_across_games = true;
  MetaAgent meta(cat, f.archive, f.table, cfg);
  meta.set_partner("p");
  RuleAgent partner(cat, f.archive.cell(partner_niche)->chromosome);
  // one full game's observations make the estimate well-defined
  play_game(meta, partner, 31414);
  const NicheEstimate est = meta.current_estimate();
  REQUIRE(est.desc.has_value());
  REQUIRE(est.confidence > 0);

  GameState s = new_game(GameConfig{2}, 6);
  meta.begin_game(2, 0);
  s.current_player = 0;
  meta.act(PlayerView(s, 0));
  const NicheIndex expected =
      f.table.responses.at(nearest_occupied(f.table, niche(*est.desc, f.table.bins)));
  CHECK(meta.chosen_niche() == expected);
}

TEST_CASE("oracle mode follows the response to the true partner niche") {
  const TrainedFixture& f = trained();
  const NicheIndex partner_niche = f.archive.occupied().front();
  MetaConfig cfg;
  cfg.mode = MetaMode::kOracle;
  MetaAgent meta(RuleCatalog::standard(), f.archive, f.table, cfg);
  meta.set_partner("p");
  meta.set_true_partner_niche(partner_niche);
  GameState s = new_game(GameConfig{2}, 8);
  meta.begin_game(3, s.current_player);
  meta.act(PlayerView(s, s.current_player));
  CHECK(meta.chosen_niche() == f.table.responses.at(partner_niche));

  MetaAgent blind(RuleCatalog::standard(), f.archive, f.table, cfg);
  blind.set_partner("q");
  blind.begin_game(3, 0);
  CHECK_THROWS_AS(blind.act(PlayerView(s, s.current_player)), std::logic_error);
}

TEST_CASE("partner model persists across games only with an id enabled") {
  const TrainedFixture& f = trained();
  const RuleCatalog& cat = RuleCatalog::standard();
  const Chromosome partner_chromosome = f.archive.cell(f.archive.occupied().front())->chromosome;

  for (bool persist : {true, false}) {
    MetaConfig cfg;
    cfg.mode = MetaMode::kAdaptive;
    cfg.persist_across_games = persist;
    MetaAgent meta(cat, f.archive, f.table, cfg);
    meta.set_partner("p");
    RuleAgent partner(cat, partner_chromosome);
    play_game(meta, partner, 11);
    const uint64_t after_one = meta.partner_model().turns_observed;
    CHECK(after_one > 0);
    meta.begin_game(99, 0);  // next game starts
    if (persist)
      CHECK(meta.partner_model().turns_observed == after_one);
    else
      CHECK(meta.partner_model().turns_observed == 0);
  }
}

TEST_CASE("meta_eval aggregates scores and adaptive estimation diagnostics") {
  const TrainedFixture& f = trained();
  MetaConfig cfg;
  cfg.mode = MetaMode::kAdaptive;
  cfg.confidence_threshold = 0;
  const MetaEvalReport rep =
      meta_eval(RuleCatalog::standard(), f.archive, f.table, f.archive, cfg, 4, 2222);
  CHECK(rep.partners.size() == f.archive.occupied().size());
  double sum = 0.0;
  for (const auto& p : rep.partners) {
    CHECK(p.games == 4);
    sum += p.mean;
  }
  CHECK(rep.mean_score == doctest::Approx(sum / rep.partners.size()));
  CHECK(rep.estimated_partners > 0);
  CHECK(rep.mae_ipp >= 0.0);
  CHECK(rep.mae_comm >= 0.0);

  // parallel evaluation reduces to the same report
  const MetaEvalReport rep2 =
      meta_eval(RuleCatalog::standard(), f.archive, f.table, f.archive, cfg, 4, 2222, 2);
  CHECK(meta_eval_report_json(rep) == meta_eval_report_json(rep2));
}

TEST_SUITE_END();
