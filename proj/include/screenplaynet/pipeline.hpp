#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "screenplaynet/curation.hpp"
#include "screenplaynet/entity_extraction.hpp"
#include "screenplaynet/error.hpp"
#include "screenplaynet/graph_metrics.hpp"
#include "screenplaynet/multilayer_graph.hpp"
#include "screenplaynet/script_parser.hpp"

namespace screenplaynet {

// An Error tagged with the pipeline stage that raised it: input, parse,
// extract, build, metrics or export.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.kind(), stage + ": " + std::string(error_kind_name(cause.kind())) + ": " +
                                cause.what()),
        stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

// Exit codes: 0 success, 1 input error, 2 pipeline error, 3 export error.
int exit_code_for(const StageError& error);

struct Analysis {
  CurationConfig config;
  std::vector<Scene> scenes;
  std::vector<Conversation> conversations;
  EntityCatalog catalog;
  std::map<std::string, double> tfidf;
  std::optional<LdaModel> lda;  // empty when the dialogue has no usable tokens
  std::vector<KeywordScore> keyword_scores;
  KeywordIndex keyword_index;
  MultilayerGraph graph;
};

// parse -> extract -> build, in memory. Throws StageError.
Analysis analyze(std::string_view script_text, const CurationConfig& config);

// Statistics rows in the order ALL, CC, KK, LL, CL, CK, KL.
inline constexpr std::array<Family, 7> kStatsRowOrder = {Family::kAll, Family::kCC, Family::kKK,
                                                         Family::kLL, Family::kCL, Family::kCK,
                                                         Family::kKL};

struct StatsRow {
  Family family = Family::kAll;
  std::optional<LayerStats> stats;  // empty for a view without nodes
};

std::vector<StatsRow> stats_table(const MultilayerGraph& graph);

struct RankRow {
  std::size_t rank = 0;  // 1-based
  EntityId id;
  std::string name;
  EntityKind layer = EntityKind::kCharacter;
  double score = 0.0;
  std::size_t appearance_count = 0;
  double appearance_fraction = 0.0;
};

struct RankTable {
  std::string layer;  // C, L, K or ALL
  Measure measure = Measure::kDegree;
  std::vector<RankRow> rows;
};

// Top-k nodes of a layer (C, L, K) or of the flattened multilayer view
// (ALL). Measures: degree, betweenness, eigenvector, influence (or D, B, Ei,
// IS). Throws Error(kUnknownMeasure) / Error(kUnknownLayer).
RankTable rank_report(const Analysis& analysis, std::string_view measure, std::string_view layer,
                      std::size_t k);
RankTable rank_report(const Analysis& analysis, Measure measure, std::string_view layer,
                      std::size_t k);

struct RunManifest {
  std::string script_path;
  std::string config_path;  // empty when the built-in configuration is used
  std::string script_sha256;
  std::string config_sha256;
  CurationConfig effective_config;
  std::size_t layer_top_k = 5;
  std::size_t multilayer_top_k = 12;
  std::string timestamp;  // UTC, ISO 8601
};

struct PipelineOptions {
  std::filesystem::path script_path;
  std::optional<std::filesystem::path> config_path;
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed;  // overrides lda.seed
  std::size_t layer_top_k = 5;
  std::size_t multilayer_top_k = 12;
  bool write_muxviz = true;
};

// Writes report.json, stats_table.csv, rankings.csv, graph_<FAMILY>.graphml
// for the six families and ALL, muxviz/, and manifest.json.
RunManifest run_pipeline(const PipelineOptions& options);

// Reads the script and configuration named by the options (stage "input").
std::string read_script(const std::filesystem::path& path);
CurationConfig load_config(const PipelineOptions& options);

std::string sha256_hex(std::string_view data);

nlohmann::ordered_json scenes_to_json(const std::vector<Scene>& scenes);
nlohmann::ordered_json stats_to_json(const std::vector<StatsRow>& rows);
nlohmann::ordered_json rank_to_json(const RankTable& table);
nlohmann::ordered_json build_report(const Analysis& analysis, const RunManifest& manifest,
                                    const std::vector<StatsRow>& rows,
                                    const std::vector<RankTable>& rankings);
nlohmann::ordered_json manifest_to_json(const RunManifest& manifest);

std::string stats_csv(const std::vector<StatsRow>& rows);
std::string rankings_csv(const std::vector<RankTable>& tables);

// Every layer/measure table plus the ALL view, in a fixed order.
std::vector<RankTable> all_rankings(const Analysis& analysis, std::size_t layer_top_k,
                                    std::size_t multilayer_top_k);

}  // namespace screenplaynet
