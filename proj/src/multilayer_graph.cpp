#include "screenplaynet/multilayer_graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "screenplaynet/error.hpp"

namespace screenplaynet {

namespace {

std::size_t family_slot(Family family) {
  if (family == Family::kAll) throw std::invalid_argument("kAll has no edge set");
  return static_cast<std::size_t>(family);
}

EdgeKey ordered(EntityId a, EntityId b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

std::optional<EntityId> scene_location(const Scene& scene, const EntityCatalog& catalog,
                                       const CurationConfig& config) {
  if (is_blocklisted(scene.header.location_raw, config)) return std::nullopt;
  auto id = catalog.lookup(scene.header.location_raw);
  if (!id || catalog.entity(*id).kind != EntityKind::kLocation) return std::nullopt;
  return id;
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kCC: return "CC";
    case Family::kLL: return "LL";
    case Family::kKK: return "KK";
    case Family::kCK: return "CK";
    case Family::kCL: return "CL";
    case Family::kKL: return "KL";
    case Family::kAll: return "ALL";
  }
  return "ALL";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::kCC, Family::kLL, Family::kKK, Family::kCK, Family::kCL, Family::kKL,
                   Family::kAll}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

std::pair<EntityKind, EntityKind> family_layers(Family family) {
  switch (family) {
    case Family::kCC: return {EntityKind::kCharacter, EntityKind::kCharacter};
    case Family::kLL: return {EntityKind::kLocation, EntityKind::kLocation};
    case Family::kKK: return {EntityKind::kKeyword, EntityKind::kKeyword};
    case Family::kCK: return {EntityKind::kCharacter, EntityKind::kKeyword};
    case Family::kCL: return {EntityKind::kCharacter, EntityKind::kLocation};
    case Family::kKL: return {EntityKind::kKeyword, EntityKind::kLocation};
    case Family::kAll: break;
  }
  throw std::invalid_argument("kAll has no endpoint layers");
}

// ---- MultilayerGraph ---------------------------------------------------------

void MultilayerGraph::add_node(EntityId id, EntityKind layer, std::string name) {
  nodes_.insert_or_assign(id, NodeInfo{layer, std::move(name)});
}

const NodeInfo& MultilayerGraph::node(EntityId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) {
    throw Error(ErrorKind::kDanglingReference, "no node " + std::to_string(id.value));
  }
  return it->second;
}

bool MultilayerGraph::add_edge(Family family, EntityId a, EntityId b) {
  const std::size_t slot = family_slot(family);
  const EntityKind la = node(a).layer;
  const EntityKind lb = node(b).layer;
  auto [first, second] = family_layers(family);
  if (!((la == first && lb == second) || (la == second && lb == first))) {
    throw std::invalid_argument("edge layers do not match family " +
                                std::string(family_name(family)));
  }
  if (a == b) return false;
  return edges_[slot].insert(ordered(a, b)).second;
}

std::vector<EntityId> MultilayerGraph::layer_nodes(EntityKind layer) const {
  std::vector<EntityId> ids;
  for (const auto& [id, info] : nodes_) {
    if (info.layer == layer) ids.push_back(id);
  }
  return ids;
}

const std::set<EdgeKey>& MultilayerGraph::edges(Family family) const {
  return edges_[family_slot(family)];
}

std::size_t MultilayerGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& set : edges_) n += set.size();
  return n;
}

// ---- SubgraphView ------------------------------------------------------------

SubgraphView SubgraphView::from_edges(std::vector<EntityId> nodes,
                                      const std::vector<EdgeKey>& edges, Family family) {
  SubgraphView view;
  view.family_ = family;
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  view.nodes_ = std::move(nodes);
  view.adjacency_.assign(view.nodes_.size(), {});

  std::set<std::pair<std::size_t, std::size_t>> unique;
  for (const auto& [a, b] : edges) {
    auto ia = view.index_of(a);
    auto ib = view.index_of(b);
    if (!ia || !ib) throw std::invalid_argument("edge endpoint outside the node set");
    if (*ia == *ib) continue;
    unique.insert(std::minmax(*ia, *ib));
  }
  view.edges_.assign(unique.begin(), unique.end());
  for (const auto& [i, j] : view.edges_) {
    view.adjacency_[i].push_back(j);
    view.adjacency_[j].push_back(i);
  }
  for (auto& list : view.adjacency_) std::sort(list.begin(), list.end());
  return view;
}

SubgraphView SubgraphView::from_index_edges(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<EntityId> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = EntityId{static_cast<std::uint32_t>(i)};
  std::vector<EdgeKey> keys;
  keys.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    keys.emplace_back(EntityId{static_cast<std::uint32_t>(a)},
                      EntityId{static_cast<std::uint32_t>(b)});
  }
  return from_edges(std::move(nodes), keys);
}

std::optional<std::size_t> SubgraphView::index_of(EntityId id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
  if (it == nodes_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

SubgraphView SubgraphView::induced(const std::vector<std::size_t>& node_indices) const {
  std::vector<bool> keep(nodes_.size(), false);
  std::vector<EntityId> ids;
  for (std::size_t i : node_indices) {
    keep.at(i) = true;
    ids.push_back(nodes_[i]);
  }
  std::vector<EdgeKey> kept;
  for (const auto& [i, j] : edges_) {
    if (keep[i] && keep[j]) kept.emplace_back(nodes_[i], nodes_[j]);
  }
  return from_edges(std::move(ids), kept, family_);
}

SubgraphView subgraph(const MultilayerGraph& graph, Family family) {
  std::vector<EntityId> nodes;
  std::vector<EdgeKey> edges;
  if (family == Family::kAll) {
    for (const auto& [id, info] : graph.nodes()) nodes.push_back(id);
    for (Family f : kEdgeFamilies) edges.insert(edges.end(), graph.edges(f).begin(), graph.edges(f).end());
    return SubgraphView::from_edges(std::move(nodes), edges, family);
  }
  const auto& family_edges = graph.edges(family);
  edges.assign(family_edges.begin(), family_edges.end());
  auto [first, second] = family_layers(family);
  if (first == second) {
    nodes = graph.layer_nodes(first);
  } else {
    for (const auto& [a, b] : edges) {
      nodes.push_back(a);
      nodes.push_back(b);
    }
  }
  return SubgraphView::from_edges(std::move(nodes), edges, family);
}

std::vector<std::vector<std::size_t>> connected_components(const SubgraphView& view) {
  const std::size_t n = view.node_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> component;
    stack.push_back(start);
    seen[start] = true;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      component.push_back(u);
      for (std::size_t v : view.adjacency()[u]) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

bool is_connected(const SubgraphView& view) {
  return view.node_count() > 0 && connected_components(view).size() == 1;
}

SubgraphView giant_component(const SubgraphView& view) {
  if (view.node_count() == 0) throw Error(ErrorKind::kEmptyGraph, "view has no nodes");
  auto components = connected_components(view);
  // Components come ordered by smallest index, i.e. smallest entity id, so
  // keeping the first maximum implements the tie-break.
  const std::vector<std::size_t>* best = &components.front();
  for (const auto& c : components) {
    if (c.size() > best->size()) best = &c;
  }
  if (best->size() == view.node_count()) return view;
  return view.induced(*best);
}

// ---- construction ------------------------------------------------------------

MultilayerGraph build_graph(const std::vector<Scene>& scenes,
                            const std::vector<Conversation>& conversations,
                            EntityCatalog& catalog, const KeywordIndex& keyword_index,
                            const CurationConfig& config) {
  auto speaker_id = [&](const Utterance& u) -> std::optional<EntityId> {
    if (u.speaker_raw.empty() || is_blocklisted(u.speaker_raw, config)) return std::nullopt;
    auto id = catalog.lookup(u.speaker_raw);
    if (!id) {
      id = catalog.add_entity(u.speaker_raw, EntityKind::kCharacter);
      catalog.add_alias(u.speaker_raw, *id);
    }
    if (catalog.entity(*id).kind != EntityKind::kCharacter) return std::nullopt;
    catalog.record_occurrence(*id, u.scene_index);
    return id;
  };

  // Speakers first so that auto-registered characters have occurrences.
  std::vector<std::vector<std::optional<EntityId>>> conversation_speakers;
  conversation_speakers.reserve(conversations.size());
  for (const Conversation& conversation : conversations) {
    if (conversation.scene_index >= scenes.size()) {
      throw Error(ErrorKind::kDanglingReference,
                  "conversation cites scene " + std::to_string(conversation.scene_index));
    }
    std::vector<std::optional<EntityId>> ids;
    for (const Utterance& u : conversation.utterances) ids.push_back(speaker_id(u));
    conversation_speakers.push_back(std::move(ids));
  }

  std::vector<std::optional<EntityId>> locations;
  locations.reserve(scenes.size());
  for (const Scene& scene : scenes) locations.push_back(scene_location(scene, catalog, config));

  MultilayerGraph graph;
  for (const Entity& e : catalog.entities()) {
    if (!catalog.occurrences(e.id).empty()) graph.add_node(e.id, e.kind, e.canonical_name);
  }
  for (const auto& [id, refs] : keyword_index.utterances) {
    const Entity& e = catalog.entity(id);
    if (e.kind != EntityKind::kKeyword) {
      throw Error(ErrorKind::kDanglingReference, "keyword index cites non-keyword entity");
    }
    if (!refs.empty()) graph.add_node(e.id, e.kind, e.canonical_name);
  }

  std::map<UtteranceRef, std::vector<EntityId>> keywords_at;
  for (const auto& [id, refs] : keyword_index.utterances) {
    for (const UtteranceRef& ref : refs) keywords_at[ref].push_back(id);
  }

  // LL: consecutive scenes at distinct locations.
  for (std::size_t i = 0; i + 1 < scenes.size(); ++i) {
    if (locations[i] && locations[i + 1]) {
      graph.add_edge(Family::kLL, *locations[i], *locations[i + 1]);
    }
  }

  // CL: every character present in a scene, speaking or mentioned.
  for (const Entity& e : catalog.entities()) {
    if (e.kind != EntityKind::kCharacter) continue;
    for (std::size_t scene_index : catalog.occurrences(e.id)) {
      if (scene_index >= scenes.size()) {
        throw Error(ErrorKind::kDanglingReference,
                    "occurrence cites scene " + std::to_string(scene_index));
      }
      if (locations[scene_index]) graph.add_edge(Family::kCL, e.id, *locations[scene_index]);
    }
  }

  for (std::size_t c = 0; c < conversations.size(); ++c) {
    const Conversation& conversation = conversations[c];
    const auto& speakers = conversation_speakers[c];
    const auto& location = locations[conversation.scene_index];

    std::set<EntityId> participants;
    std::set<EntityId> keywords;
    for (std::size_t u = 0; u < conversation.utterances.size(); ++u) {
      const Utterance& utterance = conversation.utterances[u];
      auto it = keywords_at.find(UtteranceRef{utterance.scene_index, utterance.block_index});
      const std::vector<EntityId> none;
      const auto& spoken = it == keywords_at.end() ? none : it->second;
      keywords.insert(spoken.begin(), spoken.end());
      if (!speakers[u]) continue;
      participants.insert(*speakers[u]);
      for (EntityId k : spoken) graph.add_edge(Family::kCK, *speakers[u], k);
    }
    for (auto a = participants.begin(); a != participants.end(); ++a) {
      for (auto b = std::next(a); b != participants.end(); ++b) graph.add_edge(Family::kCC, *a, *b);
    }
    for (auto a = keywords.begin(); a != keywords.end(); ++a) {
      for (auto b = std::next(a); b != keywords.end(); ++b) graph.add_edge(Family::kKK, *a, *b);
      if (location) graph.add_edge(Family::kKL, *a, *location);
    }
  }
  return graph;
}

std::map<EntityId, Appearance> appearance_counts(const EntityCatalog& catalog,
                                                 std::size_t scene_count) {
  std::map<EntityId, Appearance> out;
  for (const Entity& e : catalog.entities()) {
    Appearance a;
    a.count = catalog.occurrences(e.id).size();
    a.fraction = scene_count == 0 ? 0.0 : static_cast<double>(a.count) / static_cast<double>(scene_count);
    out.emplace(e.id, a);
  }
  return out;
}

}  // namespace screenplaynet
