#pragma once

#include <string>

#include "hanabi/analysis.hpp"
#include "hanabi/crossplay.hpp"
#include "hanabi/map_elites.hpp"
#include "hanabi/meta_agent.hpp"
#include "hanabi/response.hpp"

namespace hanabi {

// Every artifact embeds its schema tag; loaders reject anything else.
inline constexpr const char* kArchiveSchema = "hanabi-archive/1";
inline constexpr const char* kMatrixSchema = "hanabi-matrix/1";
inline constexpr const char* kResponseSchema = "hanabi-response/1";
inline constexpr const char* kCorpusSchema = "hanabi-corpus/1";
inline constexpr const char* kRecordSchema = "hanabi-record/1";
inline constexpr const char* kMetaEvalSchema = "hanabi-meta-eval/1";

// Write-to-temp then rename; creates parent directories. A failed write never
// clobbers the previous file.
void atomic_write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

std::string archive_to_json(const Archive& archive);
Archive archive_from_json(const std::string& json);
void save_archive(const Archive& archive, const std::string& path);
Archive load_archive(const std::string& path);

// Flat view: i, j, ipp, communicativeness, fitness, chromosome.
std::string archive_to_csv(const Archive& archive);
void save_archive_csv(const Archive& archive, const std::string& path);

// bins x bins grid of elite fitness, blank where uncovered. Row r is IPP bin
// r; column c is Communicativeness bin c.
std::string heatmap_csv(const Archive& archive);

std::string matrix_to_csv(const MatchupMatrix& m);
MatchupMatrix matrix_from_csv(const std::string& csv);
void save_matrix_csv(const MatchupMatrix& m, const std::string& path);
MatchupMatrix load_matrix_csv(const std::string& path);
std::string matrix_summary_json(const MatchupMatrix& m);

std::string response_table_to_json(const ResponseTable& t);
ResponseTable response_table_from_json(const std::string& json);
void save_response_table(const ResponseTable& t, const std::string& path);
ResponseTable load_response_table(const std::string& path);
// Segment export for plotting: m, n, i_response, j_response per niche.
std::string response_segments_csv(const ResponseTable& t);

std::string corpus_to_jsonl(const StateCorpus& corpus);
StateCorpus corpus_from_jsonl(const std::string& jsonl);
void save_corpus(const StateCorpus& corpus, const std::string& path);
StateCorpus load_corpus(const std::string& path);

std::string record_to_jsonl(const GameRecord& record, uint64_t catalog_hash = 0);
GameRecord record_from_jsonl(const std::string& jsonl);

std::string reeval_report_csv(const ReevalReport& report);
std::string corresponding_pairs_csv(const CorrespondingPairsReport& report);
std::string agreement_report_csv(const AgreementReport& report);
std::string meta_eval_report_json(const MetaEvalReport& report);

const char* meta_mode_name(MetaMode mode);
MetaMode meta_mode_from_name(const std::string& name);

// Shortest round-trip decimal form, for CSV cells.
std::string format_double(double v);

}  // namespace hanabi
