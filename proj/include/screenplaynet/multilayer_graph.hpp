#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "screenplaynet/entity_extraction.hpp"

namespace screenplaynet {

// Edge families; kAll selects the flattened union.
enum class Family { kCC, kLL, kKK, kCK, kCL, kKL, kAll };

inline constexpr std::array<Family, 6> kEdgeFamilies = {Family::kCC, Family::kLL, Family::kKK,
                                                        Family::kCK, Family::kCL, Family::kKL};

std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);

// Endpoint layers of a family; both equal for intra-layer families.
std::pair<EntityKind, EntityKind> family_layers(Family family);

struct NodeInfo {
  EntityKind layer = EntityKind::kCharacter;
  std::string name;
};

using EdgeKey = std::pair<EntityId, EntityId>;  // first < second

// Three node layers and six typed, undirected, unweighted edge sets.
class MultilayerGraph {
 public:
  void add_node(EntityId id, EntityKind layer, std::string name);

  // Self-loops are ignored (returns false) and duplicates collapse. Throws
  // std::invalid_argument when the endpoint layers do not match the family
  // and Error(kDanglingReference) for unknown nodes.
  bool add_edge(Family family, EntityId a, EntityId b);

  const std::map<EntityId, NodeInfo>& nodes() const { return nodes_; }
  const NodeInfo& node(EntityId id) const;
  bool has_node(EntityId id) const { return nodes_.count(id) > 0; }
  std::vector<EntityId> layer_nodes(EntityKind layer) const;

  const std::set<EdgeKey>& edges(Family family) const;
  std::size_t edge_count() const;

 private:
  std::map<EntityId, NodeInfo> nodes_;
  std::array<std::set<EdgeKey>, 6> edges_;
};

// A simple undirected graph over a subset of entity ids. Node indices follow
// ascending id order; adjacency lists are sorted.
class SubgraphView {
 public:
  SubgraphView() = default;

  // Duplicate edges and self-loops are dropped. Throws std::invalid_argument
  // when an edge endpoint is missing from `nodes`.
  static SubgraphView from_edges(std::vector<EntityId> nodes, const std::vector<EdgeKey>& edges,
                                 Family family = Family::kAll);

  // Convenience: nodes 0..n-1.
  static SubgraphView from_index_edges(std::size_t n,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  Family family() const { return family_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<EntityId>& node_ids() const { return nodes_; }
  const std::vector<std::vector<std::size_t>>& adjacency() const { return adjacency_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  std::size_t degree(std::size_t index) const { return adjacency_[index].size(); }
  std::optional<std::size_t> index_of(EntityId id) const;

  // View over the given node indices with all edges among them.
  SubgraphView induced(const std::vector<std::size_t>& node_indices) const;

 private:
  Family family_ = Family::kAll;
  std::vector<EntityId> nodes_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

// Single-layer families keep the whole layer (isolated nodes included);
// cross-layer families keep the nodes incident to at least one edge of the
// family; kAll keeps every node and flattens all families.
SubgraphView subgraph(const MultilayerGraph& graph, Family family);

// Node-index lists, one per component, each sorted ascending; components are
// ordered by their smallest index.
std::vector<std::vector<std::size_t>> connected_components(const SubgraphView& view);

bool is_connected(const SubgraphView& view);

// Largest component by node count; ties go to the component holding the
// smallest entity id. Throws Error(kEmptyGraph) on an empty view.
SubgraphView giant_component(const SubgraphView& view);

// Builds the multilayer graph. Speakers missing from the catalog are
// registered as characters unless blocklisted.
MultilayerGraph build_graph(const std::vector<Scene>& scenes,
                            const std::vector<Conversation>& conversations,
                            EntityCatalog& catalog, const KeywordIndex& keyword_index,
                            const CurationConfig& config);

struct Appearance {
  std::size_t count = 0;
  double fraction = 0.0;
};

std::map<EntityId, Appearance> appearance_counts(const EntityCatalog& catalog,
                                                 std::size_t scene_count);

}  // namespace screenplaynet
