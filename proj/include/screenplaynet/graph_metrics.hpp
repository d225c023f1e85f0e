#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "screenplaynet/multilayer_graph.hpp"

namespace screenplaynet {

struct LayerStats {
  std::size_t V = 0;
  std::size_t E = 0;
  double rho = 0.0;
  int d = 0;
  double C = 0.0;
  std::optional<double> tau;  // empty when degree variance at edge ends is 0
  double l_G = 0.0;
  // True when d and l_G were computed on the giant component.
  bool giant_component_applied = false;
};

enum class Measure { kDegree, kBetweenness, kEigenvector, kInfluenceScore };

std::string_view measure_name(Measure measure);
// Accepts "degree"/"D", "betweenness"/"B", "eigenvector"/"Ei", "influence"/"IS".
std::optional<Measure> parse_measure(std::string_view name);

struct CentralityTable {
  Measure measure = Measure::kDegree;
  std::vector<EntityId> nodes;  // view order (ascending id)
  std::vector<double> scores;   // scores[i] belongs to nodes[i]
  std::vector<EntityId> ranking;

  double score_of(EntityId id) const;
};

// 2E / (V (V - 1)); 0 for V < 2.
double density(const SubgraphView& view);

// Max eccentricity over the giant component. Throws Error(kEmptyGraph).
int diameter(const SubgraphView& view);

// Mean local clustering over all nodes (0 for degree < 2).
double avg_clustering(const SubgraphView& view);

// Degree Pearson correlation over both orientations of every edge; empty
// when the endpoint degree variance is 0. Throws Error(kNoEdges).
std::optional<double> assortativity(const SubgraphView& view);

// Mean hop distance over ordered pairs of distinct nodes of the giant
// component (0 for a single node). Throws Error(kEmptyGraph).
double avg_shortest_path(const SubgraphView& view);

CentralityTable degree_centrality(const SubgraphView& view);

// Brandes accumulation; each unordered pair counted once.
CentralityTable betweenness(const SubgraphView& view);

struct EigenvectorOptions {
  double tolerance = 1e-10;
  int max_iterations = 10000;
  // Power iteration runs on (A + shift * I); the principal eigenvector is
  // unchanged and bipartite periodicity is broken.
  double shift = 1.0;
};

// Power iteration on the giant component, L2-normalised, non-negative.
// Nodes outside the giant component score 0. Throws Error(kNoConvergence).
CentralityTable eigenvector_centrality(const SubgraphView& view,
                                       const EigenvectorOptions& options = {});

inline constexpr double kInfluenceEpsilon = 1e-6;

// sqrt(deg_norm * (betw_norm + 1e-6)) with min-max normalised factors. A
// factor with zero range normalises to 1 for every node.
CentralityTable influence_score(const SubgraphView& view, const CentralityTable& degree,
                                const CentralityTable& betweenness);
CentralityTable influence_score(const SubgraphView& view);

CentralityTable centrality(const SubgraphView& view, Measure measure);

LayerStats stats(const SubgraphView& view);

// Unweighted single-source BFS distances; -1 marks unreachable nodes.
std::vector<int> bfs_distances(const SubgraphView& view, std::size_t source);

}  // namespace screenplaynet
