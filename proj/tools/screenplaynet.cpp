#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "screenplaynet/export.hpp"
#include "screenplaynet/pipeline.hpp"

namespace sn = screenplaynet;

namespace {

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("screenplaynet");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("SCREENPLAYNET_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

// Writes to <out> when given, stdout otherwise.
void emit(const std::string& content, const std::string& out) {
  if (out.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw sn::StageError("export", sn::Error(sn::ErrorKind::kIo, "cannot write " + out));
  file << content;
  if (!file.flush()) throw sn::StageError("export", sn::Error(sn::ErrorKind::kIo, "write failed for " + out));
}

sn::Analysis load_analysis(const sn::PipelineOptions& options) {
  std::string text;
  sn::CurationConfig config;
  try {
    text = sn::read_script(options.script_path);
    config = sn::load_config(options);
  } catch (const sn::Error& e) {
    throw sn::StageError("input", e);
  }
  return sn::analyze(text, config);
}

template <typename Fn>
auto metrics_stage(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const sn::StageError&) {
    throw;
  } catch (const sn::Error& e) {
    throw sn::StageError("metrics", e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();

  CLI::App app{"Screenplay to multilayer network analysis"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  std::uint64_t seed = 0;
  std::string format;
  app.add_option("--config", config_path, "Curation file")->check(CLI::ExistingFile);
  app.add_option("--out", out, "Output directory (run, export muxviz) or file");
  auto* seed_opt = app.add_option("--seed", seed, "Overrides the LDA seed");
  app.add_option("--format", format, "json, csv, graphml or muxviz")
      ->check(CLI::IsMember({"json", "csv", "graphml", "muxviz"}));

  std::string script;
  auto add_script = [&](CLI::App* sub) {
    sub->add_option("script", script, "Screenplay text file")->required();
    sub->fallthrough();
  };

  auto* run = app.add_subcommand("run", "Full pipeline into --out");
  add_script(run);
  bool no_muxviz = false;
  run->add_flag("--no-muxviz", no_muxviz, "Skip the MuxViz export");

  auto* parse = app.add_subcommand("parse", "Scenes as JSON");
  add_script(parse);

  auto* stats = app.add_subcommand("stats", "Per-view statistics table");
  add_script(stats);

  auto* rank = app.add_subcommand("rank", "Top-k nodes by a centrality measure");
  add_script(rank);
  std::string measure = "degree";
  std::string layer = "C";
  std::size_t k = 5;
  rank->add_option("--measure", measure, "degree, betweenness, eigenvector, influence");
  rank->add_option("--layer", layer, "C, L, K or ALL");
  rank->add_option("--k", k, "Number of rows");

  auto* exp = app.add_subcommand("export", "Graph export (graphml or muxviz)");
  add_script(exp);
  std::string family = "ALL";
  exp->add_option("--family", family, "CC, LL, KK, CK, CL, KL or ALL");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  sn::PipelineOptions options;
  options.script_path = script;
  if (!config_path.empty()) options.config_path = config_path;
  if (*seed_opt) options.seed = seed;

  try {
    if (*run) {
      options.out_dir = out.empty() ? "out" : out;
      options.write_muxviz = !no_muxviz;
      sn::run_pipeline(options);
      return 0;
    }

    if (*rank && !sn::parse_measure(measure)) {
      throw sn::StageError("input", sn::Error(sn::ErrorKind::kUnknownMeasure,
                                              "unknown measure '" + measure + "'"));
    }
    if (*rank && layer != "C" && layer != "L" && layer != "K" && layer != "ALL") {
      throw sn::StageError("input", sn::Error(sn::ErrorKind::kUnknownLayer,
                                              "unknown layer '" + layer + "'"));
    }
    std::optional<sn::Family> export_family = sn::parse_family(family);
    if (*exp && !export_family) {
      throw sn::StageError("input", sn::Error(sn::ErrorKind::kUnknownLayer,
                                              "unknown family '" + family + "'"));
    }

    sn::Analysis analysis = load_analysis(options);

    if (*parse) {
      emit(sn::scenes_to_json(analysis.scenes).dump(2) + "\n", out);
    } else if (*stats) {
      auto rows = metrics_stage([&] { return sn::stats_table(analysis.graph); });
      emit(format == "json" ? sn::stats_to_json(rows).dump(2) + "\n" : sn::stats_csv(rows), out);
    } else if (*rank) {
      auto table = metrics_stage([&] { return sn::rank_report(analysis, measure, layer, k); });
      emit(format == "json" ? sn::rank_to_json(table).dump(2) + "\n" : sn::rankings_csv({table}),
           out);
    } else if (*exp) {
      try {
        if (format == "muxviz") {
          sn::export_muxviz(analysis.graph, out.empty() ? "muxviz" : out);
        } else {
          auto view = sn::subgraph(analysis.graph, *export_family);
          if (out.empty()) {
            sn::write_graphml(view, analysis.graph, std::cout);
          } else {
            sn::export_graphml(view, analysis.graph, out);
          }
        }
      } catch (const sn::Error& e) {
        throw sn::StageError("export", e);
      }
    }
    return 0;
  } catch (const sn::StageError& e) {
    std::cerr << e.what() << '\n';
    return sn::exit_code_for(e);
  }
}
