#include <gtest/gtest.h>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/graphml.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "screenplaynet/export.hpp"
#include "screenplaynet/pipeline.hpp"
#include "support/golden.hpp"

using namespace screenplaynet;

namespace {

std::size_t count_of(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

std::string graphml_of(const SubgraphView& view, const MultilayerGraph& graph) {
  std::ostringstream out;
  write_graphml(view, graph, out);
  return out.str();
}

struct BoostNode {
  std::string canonical_name;
  std::string layer;
};
struct BoostEdge {
  std::string family;
};
using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, BoostNode, BoostEdge>;

BoostGraph read_with_boost(const std::string& xml) {
  BoostGraph g;
  boost::dynamic_properties dp(boost::ignore_other_properties);
  dp.property("canonical_name", boost::get(&BoostNode::canonical_name, g));
  dp.property("layer", boost::get(&BoostNode::layer, g));
  dp.property("family", boost::get(&BoostEdge::family, g));
  std::istringstream in(xml);
  boost::read_graphml(in, g, dp);
  return g;
}

EntityKind kind_of_letter(const std::string& letter) {
  if (letter == "C") return EntityKind::kCharacter;
  if (letter == "L") return EntityKind::kLocation;
  return EntityKind::kKeyword;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("screenplaynet_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::vector<std::vector<std::string>> read_rows(const std::filesystem::path& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(testsupport::read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::vector<std::string> row;
    std::string f;
    while (fields >> f) row.push_back(f);
    rows.push_back(row);
  }
  return rows;
}

MultilayerGraph small_graph() {
  MultilayerGraph g;
  g.add_node(EntityId{0}, EntityKind::kCharacter, "ANNA");
  g.add_node(EntityId{1}, EntityKind::kCharacter, "BO & CO");
  g.add_node(EntityId{2}, EntityKind::kLocation, "THE DOCK");
  g.add_edge(Family::kCC, EntityId{0}, EntityId{1});
  g.add_edge(Family::kCL, EntityId{0}, EntityId{2});
  return g;
}

// Checks the four MuxViz files for the expected headers, column counts and
// index ranges. Returns the edge rows.
std::vector<std::vector<std::string>> validate_muxviz(const MuxvizFiles& files,
                                                      std::size_t node_total) {
  auto layers = read_rows(files.layers);
  EXPECT_EQ(layers.size(), 4u);
  EXPECT_EQ(layers[0], (std::vector<std::string>{"layerID", "layerLabel"}));

  auto nodes = read_rows(files.nodes);
  EXPECT_EQ(nodes.size(), node_total + 1);
  EXPECT_EQ(nodes[0], (std::vector<std::string>{"nodeID", "nodeLabel"}));
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    EXPECT_EQ(nodes[i].size(), 2u);
    EXPECT_EQ(nodes[i][0], std::to_string(i));
  }

  auto edges = read_rows(files.edges);
  for (const auto& row : edges) {
    EXPECT_EQ(row.size(), 5u);
    if (row.size() != 5) continue;
    for (int col : {0, 2}) {
      const auto v = std::stoul(row[col]);
      EXPECT_GE(v, 1u);
      EXPECT_LE(v, node_total);
    }
    for (int col : {1, 3}) {
      const auto l = std::stoul(row[col]);
      EXPECT_GE(l, 1u);
      EXPECT_LE(l, 3u);
    }
    EXPECT_EQ(row[4], "1");
  }

  EXPECT_EQ(testsupport::read_file(files.config),
            "multilayer_edges.txt;layers.txt;nodes.txt\n");
  return edges;
}

}  // namespace

TEST(GraphML, TwoNodeCharacterView) {
  auto g = small_graph();
  const std::string xml = graphml_of(subgraph(g, Family::kCC), g);
  EXPECT_EQ(count_of(xml, "<node "), 2u);
  EXPECT_EQ(count_of(xml, "<edge "), 1u);
  EXPECT_EQ(count_of(xml, "<data key=\"d1\">C</data>"), 2u);
  EXPECT_NE(xml.find("BO &amp; CO"), std::string::npos);
  EXPECT_NE(xml.find("<data key=\"d2\">CC</data>"), std::string::npos);
}

TEST(GraphML, EmptyViewIsWellFormed) {
  auto g = small_graph();
  const std::string xml = graphml_of(subgraph(g, Family::kKK), g);
  EXPECT_EQ(count_of(xml, "<node "), 0u);
  EXPECT_EQ(count_of(xml, "<edge "), 0u);
  EXPECT_NE(xml.find("<graph id=\"KK\" edgedefault=\"undirected\">"), std::string::npos);
  auto parsed = read_with_boost(xml);
  EXPECT_EQ(boost::num_vertices(parsed), 0u);
}

TEST(GraphML, BoostRoundTripOfFixture) {
  const std::string text = testsupport::read_file(testsupport::source_dir() /
                                                  "tests/fixtures/harbor_light.txt");
  CurationConfig config = default_curation();
  config.keyword_params.lda.iterations = 50;
  Analysis a = analyze(text, config);

  for (Family f : kStatsRowOrder) {
    auto view = subgraph(a.graph, f);
    auto parsed = read_with_boost(graphml_of(view, a.graph));
    ASSERT_EQ(boost::num_vertices(parsed), view.node_count()) << family_name(f);
    ASSERT_EQ(boost::num_edges(parsed), view.edge_count()) << family_name(f);

    // Canonical names are unique within a layer, so (layer, name) keys an edge end.
    using End = std::pair<std::string, std::string>;
    std::set<std::pair<End, End>> expected;
    for (auto [i, j] : view.edges()) {
      const auto& x = a.graph.node(view.node_ids()[i]);
      const auto& y = a.graph.node(view.node_ids()[j]);
      End ex{std::string(1, layer_letter(x.layer)), x.name};
      End ey{std::string(1, layer_letter(y.layer)), y.name};
      expected.insert(std::minmax(ex, ey));
    }
    std::set<std::pair<End, End>> actual;
    for (auto [it, end] = boost::edges(parsed); it != end; ++it) {
      const auto& x = parsed[boost::source(*it, parsed)];
      const auto& y = parsed[boost::target(*it, parsed)];
      actual.insert(std::minmax(End{x.layer, x.canonical_name}, End{y.layer, y.canonical_name}));
      auto fam = family_for_layers(kind_of_letter(x.layer), kind_of_letter(y.layer));
      EXPECT_EQ(parsed[*it].family, family_name(fam));
    }
    EXPECT_EQ(actual, expected) << family_name(f);
  }
}

TEST(MuxViz, SmallGraphRows) {
  auto g = small_graph();
  auto dir = scratch_dir("muxviz_small");
  auto files = export_muxviz(g, dir);
  auto edges = validate_muxviz(files, 3);
  // CC edge first, then the C-L edge; ids 0, 1, 2 become 1, 2, 3.
  ASSERT_EQ(edges.size(), 2u);
  EXPECT_EQ(edges[0], (std::vector<std::string>{"1", "1", "2", "1", "1"}));
  EXPECT_EQ(edges[1], (std::vector<std::string>{"1", "1", "3", "2", "1"}));
  auto nodes = read_rows(files.nodes);
  EXPECT_EQ(nodes[2][1], "BO_&_CO");
  std::filesystem::remove_all(dir);
}

TEST(MuxViz, FixtureExportIsValid) {
  const std::string text = testsupport::read_file(testsupport::source_dir() /
                                                  "tests/fixtures/harbor_light.txt");
  CurationConfig config = default_curation();
  config.keyword_params.lda.iterations = 50;
  Analysis a = analyze(text, config);
  auto dir = scratch_dir("muxviz_fixture");
  auto files = export_muxviz(a.graph, dir);
  auto edges = validate_muxviz(files, a.graph.nodes().size());
  EXPECT_EQ(edges.size(), a.graph.edge_count());

  // Layer columns agree with the node numbering.
  std::vector<int> layer_of(a.graph.nodes().size() + 1, 0);
  std::size_t n = 1;
  for (const auto& [id, info] : a.graph.nodes()) layer_of[n++] = muxviz_layer_number(info.layer);
  for (const auto& row : edges) {
    EXPECT_EQ(std::to_string(layer_of[std::stoul(row[0])]), row[1]);
    EXPECT_EQ(std::to_string(layer_of[std::stoul(row[2])]), row[3]);
  }
  std::filesystem::remove_all(dir);
}

TEST(MuxViz, UnwritableDirectory) {
  auto g = small_graph();
  auto dir = scratch_dir("muxviz_blocked");
  auto blocker = dir / "file";
  std::ofstream(blocker) << "x";
  try {
    export_muxviz(g, blocker / "sub");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
  std::filesystem::remove_all(dir);
}
