#include "screenplaynet/pipeline.hpp"

#include <openssl/evp.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "screenplaynet/export.hpp"

namespace screenplaynet {

namespace {

using json = nlohmann::ordered_json;

template <typename Fn>
auto in_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(stage, e);
  } catch (const std::exception& e) {
    throw StageError(stage, Error(ErrorKind::kInvalidParams, e.what()));
  }
}

std::string format_fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  std::string s(buf);
  return s == "-0.00" ? "0.00" : s;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

std::optional<EntityKind> layer_from_letter(std::string_view layer) {
  if (layer == "C") return EntityKind::kCharacter;
  if (layer == "L") return EntityKind::kLocation;
  if (layer == "K") return EntityKind::kKeyword;
  return std::nullopt;
}

json lda_params_json(const LdaParams& p) {
  return json{{"K", p.topics},
              {"alpha", p.alpha},
              {"beta", p.beta},
              {"iterations", p.iterations},
              {"seed", p.seed}};
}

}  // namespace

int exit_code_for(const StageError& error) {
  if (error.stage() == "input") return 1;
  if (error.stage() == "export") return 3;
  return 2;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0x0F];
  }
  return out;
}

Analysis analyze(std::string_view script_text, const CurationConfig& config) {
  Analysis a;
  a.config = config;

  in_stage("parse", [&] {
    a.scenes = parse_script(script_text);
    for (const Scene& scene : a.scenes) {
      auto conversations = segment_conversations(scene);
      a.conversations.insert(a.conversations.end(), conversations.begin(), conversations.end());
    }
  });
  spdlog::info("parse: {} scenes, {} conversations", a.scenes.size(), a.conversations.size());

  in_stage("extract", [&] {
    a.config.validate();
    a.catalog = harvest_entities(a.scenes, a.config);
    auto docs = scene_documents(a.scenes, a.config, a.catalog);
    bool any_tokens = false;
    for (const auto& d : docs) any_tokens = any_tokens || !d.empty();
    if (!any_tokens) {
      spdlog::warn("extract: dialogue has no keyword tokens; keyword layer is empty");
      return;
    }
    a.tfidf = tfidf_scores(docs);
    a.lda = lda_gibbs(docs, a.config.keyword_params.lda);
    a.keyword_scores = score_keywords(a.tfidf, *a.lda);
    a.keyword_index = select_keywords(a.keyword_scores, *a.lda, a.config, a.scenes, a.catalog);
  });
  spdlog::info("extract: {} entities, {} keywords", a.catalog.entities().size(),
               a.keyword_index.utterances.size());

  in_stage("build", [&] {
    a.graph = build_graph(a.scenes, a.conversations, a.catalog, a.keyword_index, a.config);
  });
  spdlog::info("build: {} nodes, {} edges", a.graph.nodes().size(), a.graph.edge_count());
  return a;
}

std::vector<StatsRow> stats_table(const MultilayerGraph& graph) {
  std::vector<StatsRow> rows;
  for (Family family : kStatsRowOrder) {
    StatsRow row;
    row.family = family;
    SubgraphView view = subgraph(graph, family);
    if (view.node_count() > 0) row.stats = stats(view);
    rows.push_back(row);
  }
  return rows;
}

RankTable rank_report(const Analysis& analysis, std::string_view measure, std::string_view layer,
                      std::size_t k) {
  auto m = parse_measure(measure);
  if (!m) throw Error(ErrorKind::kUnknownMeasure, "unknown measure '" + std::string(measure) + "'");
  return rank_report(analysis, *m, layer, k);
}

RankTable rank_report(const Analysis& analysis, Measure measure, std::string_view layer,
                      std::size_t k) {
  SubgraphView view;
  if (layer == "ALL") {
    view = subgraph(analysis.graph, Family::kAll);
  } else if (auto kind = layer_from_letter(layer)) {
    switch (*kind) {
      case EntityKind::kCharacter: view = subgraph(analysis.graph, Family::kCC); break;
      case EntityKind::kLocation: view = subgraph(analysis.graph, Family::kLL); break;
      case EntityKind::kKeyword: view = subgraph(analysis.graph, Family::kKK); break;
    }
  } else {
    throw Error(ErrorKind::kUnknownLayer, "unknown layer '" + std::string(layer) + "'");
  }

  RankTable table;
  table.layer = std::string(layer);
  table.measure = measure;
  if (k == 0 || view.node_count() == 0) return table;

  CentralityTable scores = centrality(view, measure);
  const auto appearances = appearance_counts(analysis.catalog, analysis.scenes.size());
  const std::size_t n = std::min(k, scores.ranking.size());
  for (std::size_t r = 0; r < n; ++r) {
    EntityId id = scores.ranking[r];
    const NodeInfo& info = analysis.graph.node(id);
    RankRow row;
    row.rank = r + 1;
    row.id = id;
    row.name = info.name;
    row.layer = info.layer;
    row.score = scores.score_of(id);
    auto it = appearances.find(id);
    if (it != appearances.end()) {
      row.appearance_count = it->second.count;
      row.appearance_fraction = it->second.fraction;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<RankTable> all_rankings(const Analysis& analysis, std::size_t layer_top_k,
                                    std::size_t multilayer_top_k) {
  std::vector<RankTable> tables;
  for (std::string_view layer : {"C", "K", "L", "ALL"}) {
    const std::size_t k = layer == "ALL" ? multilayer_top_k : layer_top_k;
    for (Measure m : {Measure::kDegree, Measure::kBetweenness, Measure::kEigenvector,
                      Measure::kInfluenceScore}) {
      tables.push_back(rank_report(analysis, m, layer, k));
    }
  }
  return tables;
}

json scenes_to_json(const std::vector<Scene>& scenes) {
  json out = json::array();
  for (const Scene& scene : scenes) {
    json blocks = json::array();
    for (const SceneBlock& block : scene.blocks) {
      if (const auto* u = std::get_if<Utterance>(&block)) {
        blocks.push_back({{"type", "utterance"},
                          {"block_index", u->block_index},
                          {"speaker", u->speaker_raw},
                          {"text", u->text}});
      } else {
        const auto& d = std::get<DescriptionBlock>(block);
        blocks.push_back({{"type", "description"}, {"block_index", d.block_index}, {"text", d.text}});
      }
    }
    json header = {{"interiority", interiority_name(scene.header.interiority)},
                   {"location", scene.header.location_raw},
                   {"time_of_day", scene.header.time_of_day ? json(*scene.header.time_of_day)
                                                            : json(nullptr)}};
    out.push_back({{"index", scene.index}, {"header", header}, {"blocks", blocks}});
  }
  return out;
}

json stats_to_json(const std::vector<StatsRow>& rows) {
  json out = json::array();
  for (const StatsRow& row : rows) {
    json r = {{"view", family_name(row.family)}};
    if (row.stats) {
      const LayerStats& s = *row.stats;
      r["V"] = s.V;
      r["E"] = s.E;
      r["rho"] = s.rho;
      r["d"] = s.d;
      r["C"] = s.C;
      r["tau"] = s.tau ? json(*s.tau) : json(nullptr);
      r["l_G"] = s.l_G;
      r["giant_component_applied"] = s.giant_component_applied;
    } else {
      r["V"] = 0;
      r["E"] = 0;
      r["rho"] = nullptr;
      r["d"] = nullptr;
      r["C"] = nullptr;
      r["tau"] = nullptr;
      r["l_G"] = nullptr;
      r["giant_component_applied"] = false;
    }
    out.push_back(std::move(r));
  }
  return out;
}

json rank_to_json(const RankTable& table) {
  json rows = json::array();
  for (const RankRow& row : table.rows) {
    rows.push_back({{"rank", row.rank},
                    {"id", row.id.value},
                    {"name", row.name},
                    {"layer", std::string(1, layer_letter(row.layer))},
                    {"score", row.score},
                    {"appearance_count", row.appearance_count},
                    {"appearance_fraction", row.appearance_fraction}});
  }
  return {{"layer", table.layer}, {"measure", measure_name(table.measure)}, {"rows", rows}};
}

json manifest_to_json(const RunManifest& manifest) {
  const auto& kp = manifest.effective_config.keyword_params;
  return {{"script_path", manifest.script_path},
          {"config_path", manifest.config_path},
          {"script_sha256", manifest.script_sha256},
          {"config_sha256", manifest.config_sha256},
          {"parameters",
           {{"lda", lda_params_json(kp.lda)},
            {"top_n", kp.top_n},
            {"layer_top_k", manifest.layer_top_k},
            {"multilayer_top_k", manifest.multilayer_top_k},
            {"cue_indent_offset", kCueIndentOffset},
            {"eigenvector_shift", EigenvectorOptions{}.shift},
            {"eigenvector_tolerance", EigenvectorOptions{}.tolerance},
            {"influence_epsilon", kInfluenceEpsilon}}},
          {"timestamp", manifest.timestamp}};
}

json build_report(const Analysis& analysis, const RunManifest& manifest,
                  const std::vector<StatsRow>& rows, const std::vector<RankTable>& rankings) {
  json inputs = manifest_to_json(manifest);
  inputs.erase("timestamp");

  std::size_t descriptions = 0;
  std::size_t utterances = 0;
  for (const Scene& scene : analysis.scenes) {
    for (const SceneBlock& block : scene.blocks) {
      if (std::holds_alternative<Utterance>(block)) {
        ++utterances;
      } else {
        ++descriptions;
      }
    }
  }

  json topics = json::array();
  if (analysis.lda) {
    const auto n = static_cast<std::size_t>(std::max(analysis.config.keyword_params.top_n, 0));
    for (int k = 0; k < analysis.lda->topics(); ++k) {
      topics.push_back({{"topic", k}, {"top_words", analysis.lda->top_words(k, n)}});
    }
  }
  json keywords = json::array();
  for (const KeywordScore& score : analysis.keyword_scores) {
    if (!analysis.catalog.find_keyword(score.term)) continue;
    keywords.push_back({{"term", score.term},
                        {"tfidf", score.tfidf},
                        {"topic_id", score.topic_id ? json(*score.topic_id) : json(nullptr)},
                        {"topic_weight",
                         score.topic_weight ? json(*score.topic_weight) : json(nullptr)}});
  }

  json ranking_json = json::array();
  for (const RankTable& table : rankings) ranking_json.push_back(rank_to_json(table));

  return {{"tool", "screenplaynet"},
          {"schema_version", 1},
          {"inputs", inputs},
          {"parse",
           {{"scenes", analysis.scenes.size()},
            {"description_blocks", descriptions},
            {"utterances", utterances},
            {"conversations", analysis.conversations.size()}}},
          {"layers",
           {{"characters", analysis.graph.layer_nodes(EntityKind::kCharacter).size()},
            {"locations", analysis.graph.layer_nodes(EntityKind::kLocation).size()},
            {"keywords", analysis.graph.layer_nodes(EntityKind::kKeyword).size()}}},
          {"topics", topics},
          {"keywords", keywords},
          {"stats", stats_to_json(rows)},
          {"rankings", ranking_json},
          {"unresolved_mentions", analysis.catalog.unresolved_mentions}};
}

std::string stats_csv(const std::vector<StatsRow>& rows) {
  std::ostringstream out;
  out << "view,V,E,rho,d,C,tau,l_G,giant_component\n";
  for (const StatsRow& row : rows) {
    out << family_name(row.family) << ',';
    if (!row.stats) {
      out << "0,0,NA,NA,NA,NA,NA,false\n";
      continue;
    }
    const LayerStats& s = *row.stats;
    out << s.V << ',' << s.E << ',' << format_fixed(s.rho) << ',' << s.d << ','
        << format_fixed(s.C) << ',' << (s.tau ? format_fixed(*s.tau) : "NA") << ','
        << format_fixed(s.l_G) << ',' << (s.giant_component_applied ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string rankings_csv(const std::vector<RankTable>& tables) {
  std::ostringstream out;
  out << "layer,measure,rank,node_id,name,score,appearance_count,appearance_fraction\n";
  for (const RankTable& table : tables) {
    for (const RankRow& row : table.rows) {
      out << table.layer << ',' << measure_name(table.measure) << ',' << row.rank << ','
          << row.id.value << ',' << csv_field(row.name) << ',' << format_fixed(row.score) << ','
          << row.appearance_count << ',' << format_fixed(row.appearance_fraction) << '\n';
    }
  }
  return out.str();
}

std::string read_script(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CurationConfig load_config(const PipelineOptions& options) {
  CurationConfig config =
      options.config_path ? load_curation(*options.config_path) : default_curation();
  if (options.seed) config.keyword_params.lda.seed = *options.seed;
  config.validate();
  return config;
}

RunManifest run_pipeline(const PipelineOptions& options) {
  RunManifest manifest;
  std::string script_text;
  CurationConfig config;
  in_stage("input", [&] {
    script_text = read_script(options.script_path);
    config = load_config(options);
    manifest.script_path = options.script_path.string();
    manifest.script_sha256 = sha256_hex(script_text);
    if (options.config_path) {
      manifest.config_path = options.config_path->string();
      manifest.config_sha256 = sha256_hex(read_script(*options.config_path));
    }
  });
  manifest.effective_config = config;
  manifest.layer_top_k = options.layer_top_k;
  manifest.multilayer_top_k = options.multilayer_top_k;
  manifest.timestamp = utc_timestamp();

  Analysis analysis = analyze(script_text, config);

  std::vector<StatsRow> rows;
  std::vector<RankTable> rankings;
  in_stage("metrics", [&] {
    rows = stats_table(analysis.graph);
    rankings = all_rankings(analysis, options.layer_top_k, options.multilayer_top_k);
  });

  in_stage("export", [&] {
    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);
    if (ec) throw Error(ErrorKind::kIo, "cannot create " + options.out_dir.string());
    const auto& dir = options.out_dir;
    write_text(dir / "report.json", build_report(analysis, manifest, rows, rankings).dump(2) + "\n");
    write_text(dir / "stats_table.csv", stats_csv(rows));
    write_text(dir / "rankings.csv", rankings_csv(rankings));
    for (Family family : kStatsRowOrder) {
      export_graphml(subgraph(analysis.graph, family), analysis.graph,
                     dir / ("graph_" + std::string(family_name(family)) + ".graphml"));
    }
    if (options.write_muxviz) export_muxviz(analysis.graph, dir / "muxviz");
    write_text(dir / "manifest.json", manifest_to_json(manifest).dump(2) + "\n");
  });
  spdlog::info("export: wrote {}", options.out_dir.string());
  return manifest;
}

}  // namespace screenplaynet
