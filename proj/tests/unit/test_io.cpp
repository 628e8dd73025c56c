#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "../helpers.hpp"
#include "hanabi/serialize.hpp"

using namespace hanabi;
using test::RandomLegalAgent;

namespace {

EvolutionConfig tiny_config() {
  EvolutionConfig cfg;
  cfg.total_candidates = 80;
  cfg.random_phase = 10;
  cfg.games_per_eval = 10;
  cfg.checkpoint_interval = 0;
  return cfg;
}

const Archive& shared_archive() {
  static const Archive archive = run_evolution(tiny_config(), 4242, RuleCatalog::standard());
  return archive;
}

std::string tamper_schema(std::string text) {
  const auto pos = text.find("hanabi-");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 7, "hanabi+");
  return text;
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("archive json round-trips exactly") {
  const Archive& archive = shared_archive();
  const std::string once = archive_to_json(archive);
  const Archive loaded = archive_from_json(once);
  CHECK(archive_to_json(loaded) == once);
  CHECK(loaded.coverage() == archive.coverage());
  CHECK(loaded.master_seed == archive.master_seed);
  CHECK_THROWS_AS(archive_from_json(tamper_schema(once)), std::runtime_error);
}

TEST_CASE("matchup matrix csv round-trips exactly") {
  const MatchupMatrix m = matchup_matrix(shared_archive(), RuleCatalog::standard(), 4, 11);
  const std::string once = matrix_to_csv(m);
  const MatchupMatrix loaded = matrix_from_csv(once);
  CHECK(matrix_to_csv(loaded) == once);
  CHECK(loaded.bins == m.bins);
  CHECK(loaded.games_per_pair == m.games_per_pair);
  CHECK_THROWS_AS(matrix_from_csv(tamper_schema(once)), std::runtime_error);
}

TEST_CASE("response table json round-trips exactly") {
  const MatchupMatrix m = matchup_matrix(shared_archive(), RuleCatalog::standard(), 4, 11);
  const ResponseTable t = response_table(m);
  const std::string once = response_table_to_json(t);
  const ResponseTable loaded = response_table_from_json(once);
  CHECK(loaded == t);
  CHECK(response_table_to_json(loaded) == once);
  CHECK_THROWS_AS(response_table_from_json(tamper_schema(once)), std::runtime_error);

  const std::string segments = response_segments_csv(t);
  CHECK(segments.find("m,n,i_response,j_response") == 0);
}

TEST_CASE("corpus jsonl round-trips exactly, states included") {
  StateCorpus corpus = collect_states(shared_archive(), RuleCatalog::standard(), 1, 3);
  if (corpus.snapshots.size() > 100) corpus.snapshots.resize(100);
  const std::string once = corpus_to_jsonl(corpus);
  const StateCorpus loaded = corpus_from_jsonl(once);
  CHECK(corpus_to_jsonl(loaded) == once);
  REQUIRE(loaded.snapshots.size() == corpus.snapshots.size());
  // replayability: the loaded states still answer queries identically
  for (size_t k = 0; k < loaded.snapshots.size(); k += 7) {
    const GameState& a = corpus.snapshots[k].state;
    const GameState& b = loaded.snapshots[k].state;
    std::string sa, sb;
    PlayerView(a, a.current_player).serialize(sa);
    PlayerView(b, b.current_player).serialize(sb);
    CHECK(sa == sb);
    CHECK(legal_actions(a) == legal_actions(b));
  }
  CHECK_THROWS_AS(corpus_from_jsonl(tamper_schema(once)), std::runtime_error);
}

TEST_CASE("game records round-trip through jsonl") {
  RandomLegalAgent a, b;
  PlayOptions opts;
  opts.record_turns = true;
  opts.agent_names = {"left", "right"};
  const GameRecord rec = play_game(a, b, 77, opts);
  const std::string once = record_to_jsonl(rec, 0xabcdef);
  const GameRecord loaded = record_from_jsonl(once);
  CHECK(record_to_jsonl(loaded, 0xabcdef) == once);
  CHECK(loaded.final_score == rec.final_score);
  CHECK(loaded.turn_count == rec.turn_count);
  CHECK(loaded.stats == rec.stats);
  CHECK_THROWS_AS(record_from_jsonl(tamper_schema(once)), std::runtime_error);
}

TEST_CASE("heatmap grid: blank cells and a single populated cell") {
  Archive empty(tiny_config(), 1);
  const std::string blank = heatmap_csv(empty);
  size_t lines = 0;
  for (char c : blank) lines += c == '\n';
  CHECK(lines == static_cast<size_t>(empty.bins));
  CHECK(blank.find_first_not_of(",\n") == std::string::npos);

  Archive one(tiny_config(), 1);
  ArchiveEntry e;
  e.fitness = 7.25;
  e.desc = {0.62, 0.31};
  one.cell(NicheIndex{12, 6}) = e;
  const std::string grid = heatmap_csv(one);
  std::istringstream in(grid);
  std::string line;
  for (int i = 0; i <= 12; ++i) std::getline(in, line);
  std::istringstream row(line);
  std::string cell;
  for (int j = 0; j <= 6; ++j) std::getline(row, cell, ',');
  CHECK(cell == format_double(7.25));
}

TEST_CASE("archive csv lists one row per elite") {
  const Archive& archive = shared_archive();
  const std::string csv = archive_to_csv(archive);
  size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == static_cast<size_t>(archive.coverage()) + 1);
  CHECK(csv.rfind("i,j,ipp,communicativeness,fitness,chromosome\n", 0) == 0);
}

TEST_CASE("atomic writes create parents and leave no temp files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "hanabi_io_test" / "nested";
  fs::remove_all(dir.parent_path());
  const fs::path file = dir / "out.json";
  atomic_write_file(file.string(), "{\"x\":1}");
  CHECK(read_file(file.string()) == "{\"x\":1}");
  atomic_write_file(file.string(), "{\"x\":2}");
  CHECK(read_file(file.string()) == "{\"x\":2}");
  size_t entries = 0;
  for (const auto& p : fs::directory_iterator(dir)) {
    ++entries;
    CHECK(p.path().extension() != ".tmp");
  }
  CHECK(entries == 1);
  fs::remove_all(dir.parent_path());
  CHECK_THROWS_AS(read_file((dir / "missing.json").string()), std::runtime_error);
}

TEST_CASE("format_double round-trips doubles exactly") {
  for (double v : {0.1, 1.0 / 3.0, 12.345678901234567, 0.0, 25.0, 1e-17, 0.7249999999999999}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("meta-eval report json carries mode and diagnostics") {
  MetaEvalReport rep;
  rep.mode = MetaMode::kOracle;
  rep.games_per_partner = 3;
  rep.mean_score = 11.5;
  MetaEvalPartnerResult p;
  p.partner = {3, 4};
  p.mean = 11.5;
  p.games = 3;
  p.truth = {0.5, 0.25};
  rep.partners.push_back(p);
  const std::string json = meta_eval_report_json(rep);
  CHECK(json.find("\"mode\":\"oracle\"") != std::string::npos);
  CHECK(json.find(kMetaEvalSchema) != std::string::npos);
  CHECK(meta_mode_from_name("adaptive") == MetaMode::kAdaptive);
  CHECK_THROWS_AS(meta_mode_from_name("bogus"), std::runtime_error);
}

TEST_SUITE_END();
