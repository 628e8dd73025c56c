#include "hanabi/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hanabi {

using nlohmann::json;

namespace {

void require_schema(const json& j, const char* expected) {
  if (!j.contains("schema") || j["schema"] != expected)
    throw std::runtime_error(std::string("schema mismatch: expected ") + expected + ", got " +
                             (j.contains("schema") ? j["schema"].dump() : "<none>"));
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

uint64_t from_hex64(const std::string& s) { return std::strtoull(s.c_str(), nullptr, 16); }

json card_json(const Card& c) { return to_string(c); }

Card card_from_json(const json& j) {
  const std::string s = j.get<std::string>();
  if (s.size() != 2) throw std::runtime_error("bad card " + s);
  const int color = color_from_letter(s[0]);
  const int rank = s[1] - '0';
  if (color < 0 || rank < 1 || rank > kMaxRank) throw std::runtime_error("bad card " + s);
  return Card{static_cast<uint8_t>(color), static_cast<uint8_t>(rank)};
}

json action_json(const Action& a) {
  json j;
  switch (a.type) {
    case ActionType::kPlay:
      j["type"] = "play";
      j["slot"] = a.slot;
      break;
    case ActionType::kDiscard:
      j["type"] = "discard";
      j["slot"] = a.slot;
      break;
    case ActionType::kHintColor:
      j["type"] = "hint_color";
      j["target"] = a.target;
      j["color"] = std::string(1, kColorLetters[a.value]);
      break;
    case ActionType::kHintRank:
      j["type"] = "hint_rank";
      j["target"] = a.target;
      j["rank"] = a.value;
      break;
  }
  return j;
}

Action action_from_json(const json& j) {
  const std::string type = j.at("type");
  if (type == "play") return Action::play(j.at("slot").get<int>());
  if (type == "discard") return Action::discard(j.at("slot").get<int>());
  if (type == "hint_color")
    return Action::hint_color(j.at("target").get<int>(),
                              color_from_letter(j.at("color").get<std::string>().at(0)));
  if (type == "hint_rank")
    return Action::hint_rank(j.at("target").get<int>(), j.at("rank").get<int>());
  throw std::runtime_error("bad action type " + type);
}

json stats_json(const PlayStats& s) {
  return json{{"pieces_known_sum", s.pieces_known_sum},
              {"cards_played", s.cards_played},
              {"hints_given", s.hints_given},
              {"turns_with_token", s.turns_with_token}};
}

PlayStats stats_from_json(const json& j) {
  PlayStats s;
  s.pieces_known_sum = j.at("pieces_known_sum").get<uint64_t>();
  s.cards_played = j.at("cards_played").get<uint64_t>();
  s.hints_given = j.at("hints_given").get<uint64_t>();
  s.turns_with_token = j.at("turns_with_token").get<uint64_t>();
  return s;
}

json config_json(const EvolutionConfig& c) {
  return json{{"total_candidates", c.total_candidates},
              {"random_phase", c.random_phase},
              {"games_per_eval", c.games_per_eval},
              {"mutation_rate", c.mutation_rate},
              {"crossover_probability", c.crossover_probability},
              {"bins", c.bins},
              {"players", c.players},
              {"checkpoint_interval", c.checkpoint_interval}};
}

EvolutionConfig config_from_json(const json& j) {
  EvolutionConfig c;
  c.total_candidates = j.at("total_candidates").get<uint64_t>();
  c.random_phase = j.at("random_phase").get<uint64_t>();
  c.games_per_eval = j.at("games_per_eval").get<int>();
  c.mutation_rate = j.at("mutation_rate").get<double>();
  c.crossover_probability = j.at("crossover_probability").get<double>();
  c.bins = j.at("bins").get<int>();
  c.players = j.at("players").get<int>();
  c.checkpoint_interval = j.at("checkpoint_interval").get<uint64_t>();
  return c;
}

json state_json(const GameState& s) {
  json j;
  j["players"] = s.player_count;
  j["hand_size"] = s.hand_size;
  json deck = json::array();
  for (int i = 0; i < s.deck_size; ++i) deck.push_back(card_json(s.deck[i]));
  j["deck"] = deck;
  json hands = json::array();
  for (int p = 0; p < s.player_count; ++p) {
    json hand = json::array();
    for (int i = 0; i < s.hands[p].size; ++i) {
      const HandSlot& slot = s.hands[p].slots[i];
      hand.push_back(json{{"card", card_json(slot.card)},
                          {"colors", slot.know.color_mask},
                          {"ranks", slot.know.rank_mask},
                          {"color_hinted", slot.know.color_hinted},
                          {"rank_hinted", slot.know.rank_hinted},
                          {"last_hinted", slot.know.last_hinted_turn}});
    }
    hands.push_back(hand);
  }
  j["hands"] = hands;
  j["fireworks"] = s.fireworks;
  json discard = json::array();
  for (const Card& c : s.discard_pile()) discard.push_back(card_json(c));
  j["discard"] = discard;
  j["tokens"] = s.hint_tokens;
  j["lives"] = s.lives;
  j["current"] = s.current_player;
  j["countdown"] = s.final_countdown;
  j["turn"] = s.turn_number;
  j["seed"] = s.seed;
  json hist = json::array();
  for (const HistoryEntry& e : s.action_history())
    hist.push_back(json{{"player", e.player}, {"action", action_json(e.action)}});
  j["history"] = hist;
  return j;
}

GameState state_from_json(const json& j) {
  GameState s;
  s.player_count = j.at("players").get<uint8_t>();
  s.hand_size = j.at("hand_size").get<uint8_t>();
  const json& deck = j.at("deck");
  s.deck_size = static_cast<uint8_t>(deck.size());
  for (size_t i = 0; i < deck.size(); ++i) s.deck[i] = card_from_json(deck[i]);
  const json& hands = j.at("hands");
  for (size_t p = 0; p < hands.size(); ++p) {
    for (const json& slot : hands[p]) {
      HandSlot hs;
      hs.card = card_from_json(slot.at("card"));
      hs.know.color_mask = slot.at("colors").get<uint8_t>();
      hs.know.rank_mask = slot.at("ranks").get<uint8_t>();
      hs.know.color_hinted = slot.at("color_hinted").get<bool>();
      hs.know.rank_hinted = slot.at("rank_hinted").get<bool>();
      hs.know.last_hinted_turn = slot.at("last_hinted").get<int16_t>();
      s.hands[p].slots[s.hands[p].size++] = hs;
    }
  }
  const auto fireworks = j.at("fireworks").get<std::vector<uint8_t>>();
  for (int c = 0; c < kNumColors; ++c) s.fireworks[c] = fireworks[c];
  for (const json& cj : j.at("discard")) {
    const Card c = card_from_json(cj);
    ++s.discards[c.color][c.rank];
    s.discard_order[s.discard_size++] = c;
  }
  s.hint_tokens = j.at("tokens").get<uint8_t>();
  s.lives = j.at("lives").get<uint8_t>();
  s.current_player = j.at("current").get<uint8_t>();
  s.final_countdown = j.at("countdown").get<int8_t>();
  s.turn_number = j.at("turn").get<uint16_t>();
  s.seed = j.at("seed").get<uint64_t>();
  for (const json& e : j.at("history")) {
    s.history[s.history_size++] =
        HistoryEntry{e.at("player").get<uint8_t>(), action_from_json(e.at("action"))};
  }
  return s;
}

}  // namespace

void atomic_write_file(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path() && !target.parent_path().empty())
    fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string archive_to_json(const Archive& archive) {
  json j;
  j["schema"] = kArchiveSchema;
  j["bins"] = archive.bins;
  j["master_seed"] = archive.master_seed;
  j["generations"] = archive.generations;
  j["catalog_hash"] = hex64(archive.catalog_hash);
  j["population_id"] = archive.population_id;
  j["config"] = config_json(archive.config);
  json entries = json::array();
  for (int i = 0; i < archive.bins; ++i) {
    for (int jj = 0; jj < archive.bins; ++jj) {
      const auto& cell = archive.cells[static_cast<size_t>(i) * archive.bins + jj];
      if (!cell) continue;
      json e;
      e["i"] = i;
      e["j"] = jj;
      e["chromosome"] = cell->chromosome.genes;
      e["fitness"] = cell->fitness;
      e["ipp"] = cell->desc.ipp;
      e["communicativeness"] = cell->desc.communicativeness;
      e["stats"] = stats_json(cell->stats);
      e["eval_seeds"] = cell->eval_seeds;
      e["generation"] = cell->generation;
      entries.push_back(e);
    }
  }
  j["entries"] = entries;
  return j.dump();
}

Archive archive_from_json(const std::string& text) {
  const json j = json::parse(text);
  require_schema(j, kArchiveSchema);
  Archive archive(config_from_json(j.at("config")), j.at("master_seed").get<uint64_t>());
  archive.generations = j.at("generations").get<uint64_t>();
  archive.catalog_hash = from_hex64(j.at("catalog_hash").get<std::string>());
  archive.population_id = j.at("population_id").get<std::string>();
  for (const json& e : j.at("entries")) {
    ArchiveEntry entry;
    const auto genes = e.at("chromosome").get<std::vector<RuleId>>();
    if (genes.size() != kChromosomeLength) throw std::runtime_error("bad chromosome length");
    std::copy(genes.begin(), genes.end(), entry.chromosome.genes.begin());
    entry.fitness = e.at("fitness").get<double>();
    entry.desc.ipp = e.at("ipp").get<double>();
    entry.desc.communicativeness = e.at("communicativeness").get<double>();
    entry.stats = stats_from_json(e.at("stats"));
    entry.eval_seeds = e.at("eval_seeds").get<std::vector<uint64_t>>();
    entry.generation = e.at("generation").get<uint64_t>();
    archive.cell(NicheIndex{e.at("i").get<int>(), e.at("j").get<int>()}) = std::move(entry);
  }
  return archive;
}

void save_archive(const Archive& archive, const std::string& path) {
  atomic_write_file(path, archive_to_json(archive));
}

Archive load_archive(const std::string& path) { return archive_from_json(read_file(path)); }

std::string archive_to_csv(const Archive& archive) {
  std::string out = "i,j,ipp,communicativeness,fitness,chromosome\n";
  for (int i = 0; i < archive.bins; ++i) {
    for (int j = 0; j < archive.bins; ++j) {
      const auto& cell = archive.cells[static_cast<size_t>(i) * archive.bins + j];
      if (!cell) continue;
      out += std::to_string(i) + ',' + std::to_string(j) + ',' + format_double(cell->desc.ipp) +
             ',' + format_double(cell->desc.communicativeness) + ',' +
             format_double(cell->fitness) + ',';
      for (int g = 0; g < kChromosomeLength; ++g) {
        if (g) out += ' ';
        out += std::to_string(cell->chromosome.genes[g]);
      }
      out += '\n';
    }
  }
  return out;
}

void save_archive_csv(const Archive& archive, const std::string& path) {
  atomic_write_file(path, archive_to_csv(archive));
}

std::string heatmap_csv(const Archive& archive) {
  std::string out;
  for (int i = 0; i < archive.bins; ++i) {
    for (int j = 0; j < archive.bins; ++j) {
      if (j) out += ',';
      const auto& cell = archive.cells[static_cast<size_t>(i) * archive.bins + j];
      if (cell) out += format_double(cell->fitness);
    }
    out += '\n';
  }
  return out;
}

std::string matrix_to_csv(const MatchupMatrix& m) {
  std::string out = "# " + std::string(kMatrixSchema) + " bins=" + std::to_string(m.bins) +
                    " games=" + std::to_string(m.games_per_pair) +
                    " seed=" + std::to_string(m.master_seed) + " population=" + m.population_id +
                    "\n";
  out += "ia,ja,ib,jb,mean,sd,n\n";
  for (const PairScore& p : m.pairs) {
    out += std::to_string(p.a.i) + ',' + std::to_string(p.a.j) + ',' + std::to_string(p.b.i) +
           ',' + std::to_string(p.b.j) + ',' + format_double(p.mean) + ',' + format_double(p.sd) +
           ',' + std::to_string(p.games) + '\n';
  }
  return out;
}

MatchupMatrix matrix_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# " + std::string(kMatrixSchema), 0) != 0)
    throw std::runtime_error("matrix csv: missing or wrong schema line");
  MatchupMatrix m;
  {
    std::istringstream header(line.substr(2));
    std::string tok;
    header >> tok;  // schema
    while (header >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
      if (key == "bins") m.bins = std::stoi(value);
      else if (key == "games") m.games_per_pair = std::stoi(value);
      else if (key == "seed") m.master_seed = std::stoull(value);
      else if (key == "population") m.population_id = value;
    }
  }
  if (!std::getline(in, line)) throw std::runtime_error("matrix csv: missing column header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    PairScore p;
    std::istringstream row(line);
    std::string cell;
    auto next = [&row, &cell] {
      if (!std::getline(row, cell, ',')) throw std::runtime_error("matrix csv: short row");
      return cell;
    };
    p.a.i = std::stoi(next());
    p.a.j = std::stoi(next());
    p.b.i = std::stoi(next());
    p.b.j = std::stoi(next());
    p.mean = std::stod(next());
    p.sd = std::stod(next());
    p.games = std::stoi(next());
    m.pairs.push_back(p);
  }
  return m;
}

void save_matrix_csv(const MatchupMatrix& m, const std::string& path) {
  atomic_write_file(path, matrix_to_csv(m));
}

MatchupMatrix load_matrix_csv(const std::string& path) { return matrix_from_csv(read_file(path)); }

std::string matrix_summary_json(const MatchupMatrix& m) {
  json j;
  j["schema"] = kMatrixSchema;
  j["bins"] = m.bins;
  j["population_id"] = m.population_id;
  j["games_per_pair"] = m.games_per_pair;
  j["master_seed"] = m.master_seed;
  j["pair_count"] = m.pairs.size();
  j["population_size"] = m.niches().size();
  double sum = 0.0;
  for (const PairScore& p : m.pairs) sum += p.mean;
  j["mean_over_pairs"] = m.pairs.empty() ? 0.0 : sum / static_cast<double>(m.pairs.size());
  return j.dump();
}

std::string response_table_to_json(const ResponseTable& t) {
  json j;
  j["schema"] = kResponseSchema;
  j["bins"] = t.bins;
  j["source_population"] = t.source_population;
  j["generalist"] = json{{"i", t.generalist.i}, {"j", t.generalist.j}};
  json rs = json::array();
  for (const auto& [partner, response] : t.responses)
    rs.push_back(json{{"m", partner.i}, {"n", partner.j}, {"i", response.i}, {"j", response.j}});
  j["responses"] = rs;
  return j.dump();
}

ResponseTable response_table_from_json(const std::string& text) {
  const json j = json::parse(text);
  require_schema(j, kResponseSchema);
  ResponseTable t;
  t.bins = j.at("bins").get<int>();
  t.source_population = j.at("source_population").get<std::string>();
  t.generalist = NicheIndex{j.at("generalist").at("i").get<int>(),
                            j.at("generalist").at("j").get<int>()};
  for (const json& r : j.at("responses"))
    t.responses[NicheIndex{r.at("m").get<int>(), r.at("n").get<int>()}] =
        NicheIndex{r.at("i").get<int>(), r.at("j").get<int>()};
  return t;
}

void save_response_table(const ResponseTable& t, const std::string& path) {
  atomic_write_file(path, response_table_to_json(t));
}

ResponseTable load_response_table(const std::string& path) {
  return response_table_from_json(read_file(path));
}

std::string response_segments_csv(const ResponseTable& t) {
  std::string out = "m,n,i_response,j_response\n";
  for (const auto& [partner, response] : t.responses)
    out += std::to_string(partner.i) + ',' + std::to_string(partner.j) + ',' +
           std::to_string(response.i) + ',' + std::to_string(response.j) + '\n';
  return out;
}

std::string corpus_to_jsonl(const StateCorpus& corpus) {
  std::string out;
  json header;
  header["type"] = "header";
  header["schema"] = kCorpusSchema;
  header["bins"] = corpus.bins;
  header["games_per_elite"] = corpus.games_per_elite;
  header["seed"] = corpus.seed;
  out += header.dump();
  out += '\n';
  for (const Snapshot& s : corpus.snapshots) {
    json j;
    j["type"] = "snapshot";
    j["id"] = s.id;
    j["source"] = json{{"i", s.source.i}, {"j", s.source.j}};
    j["game_seed"] = s.game_seed;
    j["turn"] = s.turn;
    j["state"] = state_json(s.state);
    out += j.dump();
    out += '\n';
  }
  return out;
}

StateCorpus corpus_from_jsonl(const std::string& jsonl) {
  std::istringstream in(jsonl);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("corpus: empty file");
  const json header = json::parse(line);
  require_schema(header, kCorpusSchema);
  StateCorpus corpus;
  corpus.bins = header.at("bins").get<int>();
  corpus.games_per_elite = header.at("games_per_elite").get<int>();
  corpus.seed = header.at("seed").get<uint64_t>();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    Snapshot s;
    s.id = j.at("id").get<uint64_t>();
    s.source = NicheIndex{j.at("source").at("i").get<int>(), j.at("source").at("j").get<int>()};
    s.game_seed = j.at("game_seed").get<uint64_t>();
    s.turn = j.at("turn").get<int>();
    s.state = state_from_json(j.at("state"));
    corpus.snapshots.push_back(std::move(s));
  }
  return corpus;
}

void save_corpus(const StateCorpus& corpus, const std::string& path) {
  atomic_write_file(path, corpus_to_jsonl(corpus));
}

StateCorpus load_corpus(const std::string& path) { return corpus_from_jsonl(read_file(path)); }

std::string record_to_jsonl(const GameRecord& record, uint64_t catalog_hash) {
  std::string out;
  json header;
  header["type"] = "header";
  header["schema"] = kRecordSchema;
  header["seed"] = record.seed;
  header["players"] = record.config.players;
  header["hand_size"] = record.config.hand_size();
  header["agents"] = record.agent_names;
  header["catalog_hash"] = hex64(catalog_hash);
  out += header.dump();
  out += '\n';

  int turn = 0;
  for (const TurnEntry& t : record.turns) {
    json j;
    j["type"] = "turn";
    j["turn"] = turn++;
    j["player"] = t.player;
    j["tokens_before"] = t.tokens_before;
    j["lives_before"] = t.lives_before;
    j["action"] = action_json(t.action);
    json ev;
    const ApplyEvents& e = t.events;
    if (t.action.type == ActionType::kPlay || t.action.type == ActionType::kDiscard) {
      ev["card"] = card_json(e.card);
      ev["success"] = e.success;
      ev["life_lost"] = e.life_lost;
      ev["token_gained"] = e.token_gained;
      if (e.drew) ev["drew"] = card_json(e.drawn);
      ev["countdown_started"] = e.countdown_started;
      if (t.action.type == ActionType::kPlay) {
        ev["color_known"] = e.played_color_known;
        ev["rank_known"] = e.played_rank_known;
      }
    } else {
      json touched = json::array();
      for (int s = 0; s < kMaxHandSize; ++s)
        if (e.touched_mask & (1u << s)) touched.push_back(s);
      ev["touched"] = touched;
    }
    j["events"] = ev;
    j["view_digest"] = hex64(t.view_digest);
    out += j.dump();
    out += '\n';
  }

  json footer;
  footer["type"] = "footer";
  footer["score"] = record.final_score;
  footer["turns"] = record.turn_count;
  json stats = json::array();
  for (const PlayStats& s : record.stats) stats.push_back(stats_json(s));
  footer["stats"] = stats;
  out += footer.dump();
  out += '\n';
  return out;
}

GameRecord record_from_jsonl(const std::string& jsonl) {
  std::istringstream in(jsonl);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("record: empty file");
  const json header = json::parse(line);
  require_schema(header, kRecordSchema);
  GameRecord rec;
  rec.seed = header.at("seed").get<uint64_t>();
  rec.config.players = header.at("players").get<int>();
  rec.agent_names = header.at("agents").get<std::vector<std::string>>();

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const std::string type = j.at("type");
    if (type == "turn") {
      TurnEntry t;
      t.player = j.at("player").get<uint8_t>();
      t.tokens_before = j.at("tokens_before").get<uint8_t>();
      t.lives_before = j.at("lives_before").get<uint8_t>();
      t.action = action_from_json(j.at("action"));
      const json& ev = j.at("events");
      if (t.action.type == ActionType::kPlay || t.action.type == ActionType::kDiscard) {
        t.events.card = card_from_json(ev.at("card"));
        t.events.success = ev.at("success").get<bool>();
        t.events.life_lost = ev.at("life_lost").get<bool>();
        t.events.token_gained = ev.at("token_gained").get<bool>();
        if (ev.contains("drew")) {
          t.events.drew = true;
          t.events.drawn = card_from_json(ev.at("drew"));
        }
        t.events.countdown_started = ev.at("countdown_started").get<bool>();
        if (t.action.type == ActionType::kPlay) {
          t.events.played_color_known = ev.at("color_known").get<bool>();
          t.events.played_rank_known = ev.at("rank_known").get<bool>();
        }
      } else {
        for (const json& s : ev.at("touched"))
          t.events.touched_mask |= static_cast<uint8_t>(1u << s.get<int>());
      }
      t.view_digest = from_hex64(j.at("view_digest").get<std::string>());
      rec.turns.push_back(t);
    } else if (type == "footer") {
      rec.final_score = j.at("score").get<int>();
      rec.turn_count = j.at("turns").get<int>();
      for (const json& s : j.at("stats")) rec.stats.push_back(stats_from_json(s));
    }
  }
  return rec;
}

std::string reeval_report_csv(const ReevalReport& report) {
  std::string out = "i,j,mean,sd,sem,games,archived_fitness\n";
  for (const ReevalEntry& e : report.entries)
    out += std::to_string(e.niche.i) + ',' + std::to_string(e.niche.j) + ',' +
           format_double(e.mean) + ',' + format_double(e.sd) + ',' + format_double(e.sem) + ',' +
           std::to_string(e.games) + ',' + format_double(e.archived_fitness) + '\n';
  return out;
}

std::string corresponding_pairs_csv(const CorrespondingPairsReport& report) {
  std::string out = "i,j,mean,sd,games\n";
  for (const CorrespondingPair& p : report.pairs)
    out += std::to_string(p.niche.i) + ',' + std::to_string(p.niche.j) + ',' +
           format_double(p.mean) + ',' + format_double(p.sd) + ',' + std::to_string(p.games) +
           '\n';
  return out;
}

std::string agreement_report_csv(const AgreementReport& report) {
  std::string out = "i,j,agree,total,fraction\n";
  for (const NicheAgreement& a : report.per_niche)
    out += std::to_string(a.niche.i) + ',' + std::to_string(a.niche.j) + ',' +
           std::to_string(a.agree) + ',' + std::to_string(a.total) + ',' +
           format_double(a.fraction) + '\n';
  return out;
}

const char* meta_mode_name(MetaMode mode) {
  switch (mode) {
    case MetaMode::kOracle: return "oracle";
    case MetaMode::kGeneralist: return "generalist";
    case MetaMode::kAdaptive: return "adaptive";
  }
  return "?";
}

MetaMode meta_mode_from_name(const std::string& name) {
  if (name == "oracle") return MetaMode::kOracle;
  if (name == "generalist") return MetaMode::kGeneralist;
  if (name == "adaptive") return MetaMode::kAdaptive;
  throw std::runtime_error("unknown meta mode " + name);
}

std::string meta_eval_report_json(const MetaEvalReport& report) {
  json j;
  j["schema"] = kMetaEvalSchema;
  j["mode"] = meta_mode_name(report.mode);
  j["confidence_threshold"] = report.confidence_threshold;
  j["persist_across_games"] = report.persist_across_games;
  j["games_per_partner"] = report.games_per_partner;
  j["mean_score"] = report.mean_score;
  j["estimated_partners"] = report.estimated_partners;
  j["mae_ipp"] = report.mae_ipp;
  j["mae_communicativeness"] = report.mae_comm;
  j["signed_error_ipp"] = report.signed_ipp;
  j["signed_error_communicativeness"] = report.signed_comm;
  json partners = json::array();
  for (const MetaEvalPartnerResult& p : report.partners) {
    json e;
    e["i"] = p.partner.i;
    e["j"] = p.partner.j;
    e["mean"] = p.mean;
    e["sd"] = p.sd;
    e["games"] = p.games;
    e["true_ipp"] = p.truth.ipp;
    e["true_communicativeness"] = p.truth.communicativeness;
    if (p.estimated) {
      e["estimated_ipp"] = p.estimated->ipp;
      e["estimated_communicativeness"] = p.estimated->communicativeness;
    }
    partners.push_back(e);
  }
  j["partners"] = partners;
  return j.dump();
}

}  // namespace hanabi
