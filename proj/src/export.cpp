#include "screenplaynet/export.hpp"

#include <fstream>
#include <stdexcept>

#include "screenplaynet/error.hpp"

namespace screenplaynet {

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// MuxViz splits on whitespace.
std::string muxviz_label(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == ' ' || c == '\t') c = '_';
  }
  return out.empty() ? "_" : out;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  return out;
}

void check_written(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

}  // namespace

Family family_for_layers(EntityKind a, EntityKind b) {
  for (Family f : kEdgeFamilies) {
    auto [x, y] = family_layers(f);
    if ((a == x && b == y) || (a == y && b == x)) return f;
  }
  throw std::invalid_argument("no family for layer pair");
}

void write_graphml(const SubgraphView& view, const MultilayerGraph& graph, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
      << "         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
      << "         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
         "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n"
      << "  <key id=\"d0\" for=\"node\" attr.name=\"canonical_name\" attr.type=\"string\"/>\n"
      << "  <key id=\"d1\" for=\"node\" attr.name=\"layer\" attr.type=\"string\"/>\n"
      << "  <key id=\"d2\" for=\"edge\" attr.name=\"family\" attr.type=\"string\"/>\n"
      << "  <graph id=\"" << family_name(view.family()) << "\" edgedefault=\"undirected\">\n";
  for (EntityId id : view.node_ids()) {
    const NodeInfo& info = graph.node(id);
    out << "    <node id=\"n" << id.value << "\">\n"
        << "      <data key=\"d0\">" << xml_escape(info.name) << "</data>\n"
        << "      <data key=\"d1\">" << layer_letter(info.layer) << "</data>\n"
        << "    </node>\n";
  }
  std::size_t edge_no = 0;
  for (const auto& [i, j] : view.edges()) {
    EntityId a = view.node_ids()[i];
    EntityId b = view.node_ids()[j];
    Family f = family_for_layers(graph.node(a).layer, graph.node(b).layer);
    out << "    <edge id=\"e" << edge_no++ << "\" source=\"n" << a.value << "\" target=\"n"
        << b.value << "\">\n"
        << "      <data key=\"d2\">" << family_name(f) << "</data>\n"
        << "    </edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

void export_graphml(const SubgraphView& view, const MultilayerGraph& graph,
                    const std::filesystem::path& path) {
  auto out = open_output(path);
  write_graphml(view, graph, out);
  check_written(out, path);
}

int muxviz_layer_number(EntityKind layer) {
  switch (layer) {
    case EntityKind::kCharacter: return 1;
    case EntityKind::kLocation: return 2;
    case EntityKind::kKeyword: return 3;
  }
  return 1;
}

MuxvizFiles export_muxviz(const MultilayerGraph& graph, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());

  MuxvizFiles files{dir / "multilayer_edges.txt", dir / "layers.txt", dir / "nodes.txt",
                    dir / "muxviz_config.txt"};

  std::map<EntityId, std::size_t> number;
  {
    auto out = open_output(files.nodes);
    out << "nodeID nodeLabel\n";
    std::size_t next = 1;
    for (const auto& [id, info] : graph.nodes()) {
      number[id] = next;
      out << next << ' ' << muxviz_label(info.name) << '\n';
      ++next;
    }
    check_written(out, files.nodes);
  }
  {
    auto out = open_output(files.layers);
    out << "layerID layerLabel\n"
        << "1 Character\n"
        << "2 Location\n"
        << "3 Keyword\n";
    check_written(out, files.layers);
  }
  {
    auto out = open_output(files.edges);
    for (Family f : kEdgeFamilies) {
      for (const auto& [a, b] : graph.edges(f)) {
        out << number.at(a) << ' ' << muxviz_layer_number(graph.node(a).layer) << ' '
            << number.at(b) << ' ' << muxviz_layer_number(graph.node(b).layer) << " 1\n";
      }
    }
    check_written(out, files.edges);
  }
  {
    auto out = open_output(files.config);
    out << files.edges.filename().string() << ';' << files.layers.filename().string() << ';'
        << files.nodes.filename().string() << '\n';
    check_written(out, files.config);
  }
  return files;
}

}  // namespace screenplaynet
