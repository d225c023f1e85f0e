#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "screenplaynet/multilayer_graph.hpp"

namespace screenplaynet {

// GraphML with node keys canonical_name/layer and edge key family. Nodes and
// edges are written in ascending id order; node ids are "n<entity id>".
void write_graphml(const SubgraphView& view, const MultilayerGraph& graph, std::ostream& out);
void export_graphml(const SubgraphView& view, const MultilayerGraph& graph,
                    const std::filesystem::path& path);

// MuxViz extended edge list. Layers are numbered C=1, L=2, K=3 and nodes
// 1..N in ascending entity id order.
struct MuxvizFiles {
  std::filesystem::path edges;   // "node layer node layer weight"
  std::filesystem::path layers;  // "layerID layerLabel"
  std::filesystem::path nodes;   // "nodeID nodeLabel"
  std::filesystem::path config;  // "edges;layers;nodes", as MuxViz loads it
};

int muxviz_layer_number(EntityKind layer);

MuxvizFiles export_muxviz(const MultilayerGraph& graph, const std::filesystem::path& dir);

// Family implied by the layers of an edge's endpoints.
Family family_for_layers(EntityKind a, EntityKind b);

}  // namespace screenplaynet
