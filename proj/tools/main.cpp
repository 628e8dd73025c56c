#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hanabi/analysis.hpp"
#include "hanabi/crossplay.hpp"
#include "hanabi/map_elites.hpp"
#include "hanabi/meta_agent.hpp"
#include "hanabi/response.hpp"
#include "hanabi/serialize.hpp"

using namespace hanabi;
using nlohmann::json;

namespace {

int default_threads() {
  if (const char* env = std::getenv("HANABI_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return t;
  }
  return 1;
}

std::string resolve_out(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  if (const char* env = std::getenv("HANABI_OUT_DIR"))
    return std::string(env) + "/" + path;
  return path;
}

NicheIndex parse_niche(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw std::runtime_error("niche must be 'i,j', got " + s);
  return NicheIndex{std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

EvolutionConfig read_evolution_config(const std::string& path) {
  EvolutionConfig cfg;
  if (path.empty()) return cfg;
  const json j = json::parse(read_file(path));
  if (j.contains("total_candidates")) cfg.total_candidates = j["total_candidates"].get<uint64_t>();
  if (j.contains("random_phase")) cfg.random_phase = j["random_phase"].get<uint64_t>();
  if (j.contains("games_per_eval")) cfg.games_per_eval = j["games_per_eval"].get<int>();
  if (j.contains("mutation_rate")) cfg.mutation_rate = j["mutation_rate"].get<double>();
  if (j.contains("crossover_probability"))
    cfg.crossover_probability = j["crossover_probability"].get<double>();
  if (j.contains("bins")) cfg.bins = j["bins"].get<int>();
  if (j.contains("players")) cfg.players = j["players"].get<int>();
  if (j.contains("checkpoint_interval"))
    cfg.checkpoint_interval = j["checkpoint_interval"].get<uint64_t>();
  return cfg;
}

// Resolved-parameter snapshot written next to every command's outputs.
void write_snapshot(const std::string& out_path, const std::string& command, json params) {
  params["schema"] = "hanabi-config/1";
  params["command"] = command;
  params["catalog_version"] = RuleCatalog::standard().version();
  char hash_buf[17];
  std::snprintf(hash_buf, sizeof hash_buf, "%016llx",
                static_cast<unsigned long long>(RuleCatalog::standard().hash()));
  params["catalog_hash"] = hash_buf;
  const bool is_dir = !out_path.empty() && out_path.back() == '/';
  const std::string path =
      is_dir ? out_path + "config.json" : out_path + ".config.json";
  atomic_write_file(path, params.dump(2) + "\n");
}

json evolution_config_json(const EvolutionConfig& c) {
  return json{{"total_candidates", c.total_candidates},
              {"random_phase", c.random_phase},
              {"games_per_eval", c.games_per_eval},
              {"mutation_rate", c.mutation_rate},
              {"crossover_probability", c.crossover_probability},
              {"bins", c.bins},
              {"players", c.players},
              {"checkpoint_interval", c.checkpoint_interval}};
}

int cmd_evolve(const std::string& config_path, uint64_t seed, std::string out, int threads,
               const std::string& resume_path, const std::string& population_id) {
  if (out.empty()) throw std::runtime_error("evolve needs --out");
  if (out.back() != '/') out += '/';
  const EvolutionConfig cfg = read_evolution_config(config_path);
  const RuleCatalog& catalog = RuleCatalog::standard();

  std::optional<Archive> resume;
  if (!resume_path.empty()) resume = load_archive(resume_path);

  RunOptions options;
  options.threads = threads;
  options.checkpoint_dir = out;
  options.progress = [](uint64_t gen, const Archive& a) {
    std::cerr << "generation " << gen << "  coverage " << a.coverage() << "\n";
  };

  Archive archive = run_evolution(cfg, seed, catalog, options, std::move(resume));
  archive.population_id = population_id;

  save_archive(archive, out + "archive.json");
  save_archive_csv(archive, out + "archive.csv");
  atomic_write_file(out + "heatmap.csv", heatmap_csv(archive));
  write_snapshot(out, "evolve",
                 json{{"seed", seed},
                      {"threads", threads},
                      {"population_id", population_id},
                      {"config", evolution_config_json(cfg)}});
  std::cout << "coverage " << archive.coverage() << " of " << cfg.bins * cfg.bins << "\n";
  return 0;
}

int cmd_reeval(const std::string& archive_path, int games, uint64_t seed,
               const std::string& out, int threads) {
  const Archive archive = load_archive(archive_path);
  const ReevalReport report = reevaluate(archive, RuleCatalog::standard(), games, seed, threads);
  atomic_write_file(resolve_out(out), reeval_report_csv(report));
  write_snapshot(resolve_out(out), "reeval",
                 json{{"archive", archive_path}, {"games", games}, {"seed", seed}});
  std::cout << "entries " << report.entries.size() << "  max mean " << report.max_mean
            << "  mean of means " << report.mean_of_means << "  max sd " << report.max_sd << "\n";
  return 0;
}

int cmd_crossplay(const std::string& archive_path, const std::string& archive_b_path, int games,
                  uint64_t seed, const std::string& out, const std::string& summary_path,
                  int threads) {
  const Archive archive = load_archive(archive_path);
  const std::string out_path = resolve_out(out);
  if (archive_b_path.empty()) {
    const MatchupMatrix m =
        matchup_matrix(archive, RuleCatalog::standard(), games, seed, threads);
    save_matrix_csv(m, out_path);
    if (!summary_path.empty())
      atomic_write_file(resolve_out(summary_path), matrix_summary_json(m) + "\n");
    std::cout << "pairs " << m.pairs.size() << "\n";
  } else {
    const Archive b = load_archive(archive_b_path);
    const CorrespondingPairsReport rep =
        corresponding_pairs(archive, b, RuleCatalog::standard(), games, seed, threads);
    atomic_write_file(out_path, corresponding_pairs_csv(rep));
    std::cout << "pairs " << rep.pairs.size() << "  mean " << rep.summary_mean << "\n";
  }
  write_snapshot(out_path, "crossplay",
                 json{{"archive", archive_path},
                      {"archive_b", archive_b_path},
                      {"games", games},
                      {"seed", seed}});
  return 0;
}

int cmd_respond(const std::string& matrix_path, const std::string& archive_path,
                const std::string& out, const std::string& segments_path) {
  const MatchupMatrix m = load_matrix_csv(matrix_path);
  const Archive archive = load_archive(archive_path);
  for (const NicheIndex& n : m.niches())
    if (!archive.cell(n))
      throw std::runtime_error("matrix references unoccupied niche (" + std::to_string(n.i) +
                               "," + std::to_string(n.j) + ")");
  ResponseTable table = response_table(m);
  table.source_population = archive.population_id;
  const std::string out_path = resolve_out(out);
  save_response_table(table, out_path);
  if (!segments_path.empty())
    atomic_write_file(resolve_out(segments_path), response_segments_csv(table));
  write_snapshot(out_path, "respond",
                 json{{"matrix", matrix_path}, {"archive", archive_path}});
  std::cout << "generalist (" << table.generalist.i << "," << table.generalist.j << ")  responses "
            << table.responses.size() << "\n";
  return 0;
}

int cmd_meta_eval(const std::string& mode_name, const std::string& table_path,
                  const std::string& archive_path, const std::string& opponents_path, int games,
                  int64_t threshold, bool no_partner_id, uint64_t seed, const std::string& out,
                  int threads, int sample) {
  const Archive archive = load_archive(archive_path);
  const Archive opponents = opponents_path.empty() ? archive : load_archive(opponents_path);
  const ResponseTable table = load_response_table(table_path);

  MetaConfig cfg;
  cfg.mode = meta_mode_from_name(mode_name);
  cfg.confidence_threshold =
      threshold < 0 ? kThresholdInfinite : static_cast<uint64_t>(threshold);
  if (cfg.mode == MetaMode::kAdaptive && threshold < 0) cfg.confidence_threshold = 0;
  cfg.persist_across_games = !no_partner_id;

  std::vector<NicheIndex> subset;
  if (sample > 0) {
    const auto occupied = opponents.occupied();
    Rng rng(stream_seed(seed, "partner-sample"));
    std::vector<NicheIndex> pool = occupied;
    for (int k = 0; k < sample && !pool.empty(); ++k) {
      const size_t idx = rng.uniform(static_cast<uint32_t>(pool.size()));
      subset.push_back(pool[idx]);
      pool.erase(pool.begin() + static_cast<long>(idx));
    }
  }

  const MetaEvalReport report = meta_eval(RuleCatalog::standard(), archive, table, opponents, cfg,
                                          games, seed, threads, subset);
  const std::string out_path = resolve_out(out);
  if (!out_path.empty()) {
    atomic_write_file(out_path, meta_eval_report_json(report) + "\n");
    write_snapshot(out_path, "meta-eval",
                   json{{"mode", mode_name},
                        {"table", table_path},
                        {"archive", archive_path},
                        {"opponents", opponents_path},
                        {"games", games},
                        {"threshold", threshold},
                        {"partner_id", !no_partner_id},
                        {"seed", seed},
                        {"sample", sample}});
  }
  std::cout << "mode " << mode_name << "  partners " << report.partners.size() << "  mean score "
            << report.mean_score << "\n";
  if (cfg.mode == MetaMode::kAdaptive)
    std::cout << "estimation mae: ipp " << report.mae_ipp << "  communicativeness "
              << report.mae_comm << "  (signed " << report.signed_ipp << ", "
              << report.signed_comm << ")\n";
  return 0;
}

int cmd_analyze(const std::string& mode, const std::string& archive_path,
                const std::string& archive_b_path, const std::string& corpus_path,
                int games_per_elite, uint64_t seed, const std::string& out, int threads) {
  const std::string out_path = resolve_out(out);
  const RuleCatalog& catalog = RuleCatalog::standard();
  if (mode == "heatmap") {
    const Archive archive = load_archive(archive_path);
    atomic_write_file(out_path, heatmap_csv(archive));
  } else if (mode == "collect") {
    const Archive archive = load_archive(archive_path);
    const StateCorpus corpus = collect_states(archive, catalog, games_per_elite, seed);
    save_corpus(corpus, out_path);
    std::cout << "snapshots " << corpus.snapshots.size() << "\n";
  } else if (mode == "hamming") {
    if (archive_b_path.empty()) throw std::runtime_error("hamming needs --archive-b");
    const Archive a = load_archive(archive_path);
    const Archive b = load_archive(archive_b_path);
    std::string csv = "i,j,distance\n";
    double sum = 0.0;
    int count = 0;
    for (const NicheIndex& n : a.occupied()) {
      if (!b.cell(n)) continue;
      const int d = hamming(a.cell(n)->chromosome, b.cell(n)->chromosome);
      csv += std::to_string(n.i) + ',' + std::to_string(n.j) + ',' + std::to_string(d) + '\n';
      sum += d;
      ++count;
    }
    atomic_write_file(out_path, csv);
    std::cout << "pairs " << count << "  mean hamming "
              << (count ? sum / count : 0.0) << "\n";
  } else if (mode == "agreement") {
    if (archive_b_path.empty() || corpus_path.empty())
      throw std::runtime_error("agreement needs --archive-b and --corpus");
    const Archive a = load_archive(archive_path);
    const Archive b = load_archive(archive_b_path);
    const StateCorpus corpus = load_corpus(corpus_path);
    const AgreementReport rep = action_agreement(a, b, corpus, catalog, threads);
    atomic_write_file(out_path, agreement_report_csv(rep));
    std::cout << "niches " << rep.per_niche.size() << "  mean agreement " << rep.mean_agreement
              << "  mean legal actions " << rep.mean_legal_actions << "\n";
  } else {
    throw std::runtime_error("unknown analyze mode " + mode);
  }
  write_snapshot(out_path, "analyze",
                 json{{"mode", mode},
                      {"archive", archive_path},
                      {"archive_b", archive_b_path},
                      {"corpus", corpus_path},
                      {"games_per_elite", games_per_elite},
                      {"seed", seed}});
  return 0;
}

int cmd_play(const std::string& archive_path, const std::string& niche_a,
             const std::string& niche_b, const std::string& chromosome_a,
             const std::string& chromosome_b, int games, uint64_t seed, const std::string& out) {
  const RuleCatalog& catalog = RuleCatalog::standard();
  std::optional<Archive> archive;
  auto resolve = [&](const std::string& niche_arg, const std::string& chromosome_arg,
                     const char* side) {
    if (!chromosome_arg.empty()) return chromosome_from_string(chromosome_arg);
    if (niche_arg.empty())
      throw std::runtime_error(std::string("agent ") + side +
                               " needs --niche or --chromosome");
    if (!archive) {
      if (archive_path.empty()) throw std::runtime_error("--niche needs --archive");
      archive = load_archive(archive_path);
    }
    const NicheIndex n = parse_niche(niche_arg);
    if (!archive->cell(n))
      throw std::runtime_error("niche (" + niche_arg + ") is unoccupied");
    return archive->cell(n)->chromosome;
  };
  const Chromosome a = resolve(niche_a, chromosome_a, "a");
  const Chromosome b = resolve(niche_b.empty() && chromosome_b.empty() ? niche_a : niche_b,
                               chromosome_b, "b");

  RuleAgent agent_a(catalog, a);
  RuleAgent agent_b(catalog, b);
  std::string jsonl;
  double sum = 0.0;
  for (int g = 0; g < games; ++g) {
    const uint64_t game_seed = stream_seed(seed, "play", static_cast<uint64_t>(g));
    PlayOptions opts;
    opts.record_turns = true;
    opts.agent_names = {to_string(a), to_string(b)};
    const bool swap = (stream_seed(game_seed, "seating") & 1) != 0;
    const GameRecord rec = swap ? play_game(agent_b, agent_a, game_seed, opts)
                                : play_game(agent_a, agent_b, game_seed, opts);
    jsonl += record_to_jsonl(rec, catalog.hash());
    sum += rec.final_score;
  }
  const std::string out_path = resolve_out(out);
  if (!out_path.empty()) {
    atomic_write_file(out_path, jsonl);
    write_snapshot(out_path, "play",
                   json{{"archive", archive_path},
                        {"niche_a", niche_a},
                        {"niche_b", niche_b},
                        {"games", games},
                        {"seed", seed}});
  }
  std::cout << "games " << games << "  mean score " << (games ? sum / games : 0.0) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hanabi quality-diversity toolkit"};
  app.require_subcommand(1);

  // evolve
  auto* evolve = app.add_subcommand("evolve", "Run the archive-filling evolution loop");
  std::string ev_config, ev_out, ev_resume, ev_population;
  uint64_t ev_seed = 1;
  int ev_threads = default_threads();
  evolve->add_option("--config", ev_config, "evolution config JSON");
  evolve->add_option("--seed", ev_seed, "master seed")->required();
  evolve->add_option("--out", ev_out, "output directory")->required();
  evolve->add_option("--threads", ev_threads, "worker threads (1 = bit-reproducible)");
  evolve->add_option("--resume", ev_resume, "checkpoint archive to resume from");
  evolve->add_option("--population-id", ev_population, "label stored in the archive");

  // reeval
  auto* reeval = app.add_subcommand("reeval", "Re-evaluate every elite on fresh seeds");
  std::string re_archive, re_out;
  int re_games = 1000, re_threads = default_threads();
  uint64_t re_seed = 1;
  reeval->add_option("--archive", re_archive)->required();
  reeval->add_option("--games", re_games, "games per elite");
  reeval->add_option("--seed", re_seed);
  reeval->add_option("--out", re_out, "report CSV path")->required();
  reeval->add_option("--threads", re_threads);

  // crossplay
  auto* crossplay = app.add_subcommand(
      "crossplay", "Match-up matrix within an archive, or corresponding pairs across two");
  std::string cp_archive, cp_archive_b, cp_out, cp_summary;
  int cp_games = 400, cp_threads = default_threads();
  uint64_t cp_seed = 1;
  crossplay->add_option("--archive", cp_archive)->required();
  crossplay->add_option("--archive-b", cp_archive_b, "second archive (corresponding pairs)");
  crossplay->add_option("--games", cp_games, "games per pair");
  crossplay->add_option("--seed", cp_seed);
  crossplay->add_option("--out", cp_out, "CSV output path")->required();
  crossplay->add_option("--summary", cp_summary, "matrix summary JSON path");
  crossplay->add_option("--threads", cp_threads);

  // respond
  auto* respond = app.add_subcommand("respond", "Build the generalist and response table");
  std::string rs_matrix, rs_archive, rs_out, rs_segments;
  respond->add_option("--matrix", rs_matrix)->required();
  respond->add_option("--archive", rs_archive)->required();
  respond->add_option("--out", rs_out)->required();
  respond->add_option("--segments", rs_segments, "segment CSV for plotting");

  // meta-eval
  auto* meta = app.add_subcommand("meta-eval", "Evaluate a meta-agent against an archive");
  std::string me_mode, me_table, me_archive, me_opponents, me_out;
  int me_games = 1000, me_threads = default_threads(), me_sample = 0;
  int64_t me_threshold = -1;
  bool me_no_partner_id = false;
  uint64_t me_seed = 1;
  meta->add_option("--mode", me_mode, "oracle | generalist | adaptive")->required();
  meta->add_option("--table", me_table)->required();
  meta->add_option("--archive", me_archive, "training archive (policies)")->required();
  meta->add_option("--opponents", me_opponents, "partner archive (defaults to --archive)");
  meta->add_option("--games", me_games, "games per partner");
  meta->add_option("--threshold", me_threshold, "confidence threshold (adaptive)");
  meta->add_flag("--no-partner-id", me_no_partner_id, "reset the partner model between games");
  meta->add_option("--seed", me_seed);
  meta->add_option("--out", me_out, "report JSON path");
  meta->add_option("--threads", me_threads);
  meta->add_option("--sample", me_sample, "evaluate only K sampled partners");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Diversity diagnostics and exports");
  std::string an_mode, an_archive, an_archive_b, an_corpus, an_out;
  int an_games = 10, an_threads = default_threads();
  uint64_t an_seed = 1;
  analyze->add_option("--mode", an_mode, "hamming | agreement | heatmap | collect")->required();
  analyze->add_option("--archive", an_archive)->required();
  analyze->add_option("--archive-b", an_archive_b);
  analyze->add_option("--corpus", an_corpus, "state corpus JSONL (agreement)");
  analyze->add_option("--games-per-elite", an_games, "games per elite (collect)");
  analyze->add_option("--seed", an_seed);
  analyze->add_option("--out", an_out)->required();
  analyze->add_option("--threads", an_threads);

  // play
  auto* play = app.add_subcommand("play", "Play recorded games between two agents");
  std::string pl_archive, pl_niche_a, pl_niche_b, pl_chromosome_a, pl_chromosome_b, pl_out;
  int pl_games = 1;
  uint64_t pl_seed = 1;
  play->add_option("--archive", pl_archive);
  play->add_option("--niche-a", pl_niche_a, "elite cell 'i,j'");
  play->add_option("--niche-b", pl_niche_b, "elite cell 'i,j' (defaults to --niche-a)");
  play->add_option("--chromosome-a", pl_chromosome_a, "15 comma-separated rule ids");
  play->add_option("--chromosome-b", pl_chromosome_b);
  play->add_option("--games", pl_games);
  play->add_option("--seed", pl_seed);
  play->add_option("--out", pl_out, "record JSONL path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*evolve)
      return cmd_evolve(ev_config, ev_seed, resolve_out(ev_out), ev_threads, ev_resume,
                        ev_population);
    if (*reeval) return cmd_reeval(re_archive, re_games, re_seed, re_out, re_threads);
    if (*crossplay)
      return cmd_crossplay(cp_archive, cp_archive_b, cp_games, cp_seed, cp_out, cp_summary,
                           cp_threads);
    if (*respond) return cmd_respond(rs_matrix, rs_archive, rs_out, rs_segments);
    if (*meta)
      return cmd_meta_eval(me_mode, me_table, me_archive, me_opponents, me_games, me_threshold,
                           me_no_partner_id, me_seed, me_out, me_threads, me_sample);
    if (*analyze)
      return cmd_analyze(an_mode, an_archive, an_archive_b, an_corpus, an_games, an_seed, an_out,
                         an_threads);
    if (*play)
      return cmd_play(pl_archive, pl_niche_a, pl_niche_b, pl_chromosome_a, pl_chromosome_b,
                      pl_games, pl_seed, pl_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
