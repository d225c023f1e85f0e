#include "screenplaynet/graph_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "screenplaynet/error.hpp"

namespace screenplaynet {

namespace {

void require_nodes(const SubgraphView& view) {
  if (view.node_count() == 0) throw Error(ErrorKind::kEmptyGraph, "view has no nodes");
}

// Ranking keys are quantised relative to the largest score so that values
// equal up to floating-point noise tie and fall back to id order.
std::vector<EntityId> rank_nodes(const std::vector<EntityId>& nodes,
                                 const std::vector<double>& scores) {
  double max_abs = 0.0;
  for (double s : scores) max_abs = std::max(max_abs, std::abs(s));
  std::vector<long long> keys(scores.size(), 0);
  if (max_abs > 0.0) {
    for (std::size_t i = 0; i < scores.size(); ++i) {
      keys[i] = std::llround(scores[i] / max_abs * 1e12);
    }
  }
  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return keys[a] > keys[b];
    return nodes[a] < nodes[b];
  });
  std::vector<EntityId> ranking;
  ranking.reserve(order.size());
  for (std::size_t i : order) ranking.push_back(nodes[i]);
  return ranking;
}

CentralityTable make_table(Measure measure, const SubgraphView& view, std::vector<double> scores) {
  CentralityTable table;
  table.measure = measure;
  table.nodes = view.node_ids();
  table.scores = std::move(scores);
  table.ranking = rank_nodes(table.nodes, table.scores);
  return table;
}

std::vector<double> min_max_normalise(const std::vector<double>& values) {
  if (values.empty()) return {};
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  std::vector<double> out(values.size(), 1.0);
  if (range <= 0.0) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - *lo) / range;
  return out;
}

}  // namespace

std::string_view measure_name(Measure measure) {
  switch (measure) {
    case Measure::kDegree: return "degree";
    case Measure::kBetweenness: return "betweenness";
    case Measure::kEigenvector: return "eigenvector";
    case Measure::kInfluenceScore: return "influence";
  }
  return "degree";
}

std::optional<Measure> parse_measure(std::string_view name) {
  if (name == "degree" || name == "D") return Measure::kDegree;
  if (name == "betweenness" || name == "B") return Measure::kBetweenness;
  if (name == "eigenvector" || name == "Ei") return Measure::kEigenvector;
  if (name == "influence" || name == "IS" || name == "I.S") return Measure::kInfluenceScore;
  return std::nullopt;
}

double CentralityTable::score_of(EntityId id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
  if (it == nodes.end() || *it != id) throw std::out_of_range("node not in table");
  return scores[static_cast<std::size_t>(it - nodes.begin())];
}

std::vector<int> bfs_distances(const SubgraphView& view, std::size_t source) {
  std::vector<int> dist(view.node_count(), -1);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v : view.adjacency()[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

double density(const SubgraphView& view) {
  const double v = static_cast<double>(view.node_count());
  if (view.node_count() < 2) return 0.0;
  return 2.0 * static_cast<double>(view.edge_count()) / (v * (v - 1.0));
}

int diameter(const SubgraphView& view) {
  require_nodes(view);
  SubgraphView giant = giant_component(view);
  int best = 0;
  for (std::size_t s = 0; s < giant.node_count(); ++s) {
    for (int d : bfs_distances(giant, s)) best = std::max(best, d);
  }
  return best;
}

double avg_clustering(const SubgraphView& view) {
  require_nodes(view);
  const auto& adj = view.adjacency();
  double total = 0.0;
  for (std::size_t v = 0; v < view.node_count(); ++v) {
    const auto& nbrs = adj[v];
    const std::size_t k = nbrs.size();
    if (k < 2) continue;
    std::size_t links = 0;
    for (std::size_t a = 0; a < k; ++a) {
      const auto& na = adj[nbrs[a]];
      for (std::size_t b = a + 1; b < k; ++b) {
        if (std::binary_search(na.begin(), na.end(), nbrs[b])) ++links;
      }
    }
    total += static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
  }
  return total / static_cast<double>(view.node_count());
}

std::optional<double> assortativity(const SubgraphView& view) {
  if (view.edge_count() == 0) throw Error(ErrorKind::kNoEdges, "assortativity needs an edge");
  // Both orientations of each edge make the x and y marginals identical.
  double sum = 0.0;
  double sum_sq = 0.0;
  double sum_xy = 0.0;
  for (const auto& [i, j] : view.edges()) {
    const double di = static_cast<double>(view.degree(i));
    const double dj = static_cast<double>(view.degree(j));
    sum += di + dj;
    sum_sq += di * di + dj * dj;
    sum_xy += 2.0 * di * dj;
  }
  const double m = 2.0 * static_cast<double>(view.edge_count());
  const double mean = sum / m;
  const double variance = sum_sq / m - mean * mean;
  if (variance <= 1e-12 * std::max(1.0, mean * mean)) return std::nullopt;
  return (sum_xy / m - mean * mean) / variance;
}

double avg_shortest_path(const SubgraphView& view) {
  require_nodes(view);
  SubgraphView giant = giant_component(view);
  const std::size_t n = giant.node_count();
  if (n < 2) return 0.0;
  double total = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    for (int d : bfs_distances(giant, s)) total += d;
  }
  return total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

CentralityTable degree_centrality(const SubgraphView& view) {
  std::vector<double> scores(view.node_count());
  for (std::size_t i = 0; i < scores.size(); ++i) scores[i] = static_cast<double>(view.degree(i));
  return make_table(Measure::kDegree, view, std::move(scores));
}

CentralityTable betweenness(const SubgraphView& view) {
  const std::size_t n = view.node_count();
  const auto& adj = view.adjacency();
  std::vector<double> score(n, 0.0);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<int> dist(n);
  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<std::size_t> order;
  order.reserve(n);

  for (std::size_t s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    for (auto& p : preds) p.clear();
    order.clear();

    sigma[s] = 1.0;
    dist[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (std::size_t w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      std::size_t w = *it;
      for (std::size_t v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) score[w] += delta[w];
    }
  }
  for (double& x : score) x /= 2.0;
  return make_table(Measure::kBetweenness, view, std::move(score));
}

CentralityTable eigenvector_centrality(const SubgraphView& view, const EigenvectorOptions& options) {
  std::vector<double> scores(view.node_count(), 0.0);
  if (view.node_count() == 0) return make_table(Measure::kEigenvector, view, std::move(scores));

  SubgraphView giant = giant_component(view);
  const std::size_t n = giant.node_count();
  const auto& adj = giant.adjacency();
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> next(n);
  bool converged = false;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    for (std::size_t v = 0; v < n; ++v) {
      double acc = options.shift * x[v];
      for (std::size_t w : adj[v]) acc += x[w];
      next[v] = acc;
    }
    double norm = 0.0;
    for (double y : next) norm += y * y;
    norm = std::sqrt(norm);
    if (norm == 0.0) throw Error(ErrorKind::kNoConvergence, "power iteration collapsed to zero");
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      next[v] /= norm;
      change = std::max(change, std::abs(next[v] - x[v]));
    }
    x.swap(next);
    if (change < options.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw Error(ErrorKind::kNoConvergence,
                "eigenvector centrality did not converge in " +
                    std::to_string(options.max_iterations) + " iterations");
  }

  double sum = 0.0;
  for (double y : x) sum += y;
  const double sign = sum < 0.0 ? -1.0 : 1.0;
  for (std::size_t v = 0; v < n; ++v) {
    auto index = view.index_of(giant.node_ids()[v]);
    scores[*index] = std::max(0.0, sign * x[v]);
  }
  return make_table(Measure::kEigenvector, view, std::move(scores));
}

CentralityTable influence_score(const SubgraphView& view, const CentralityTable& degree,
                                const CentralityTable& betweenness_table) {
  const auto deg = min_max_normalise(degree.scores);
  const auto betw = min_max_normalise(betweenness_table.scores);
  std::vector<double> scores(view.node_count());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    scores[i] = std::sqrt(deg[i] * (betw[i] + kInfluenceEpsilon));
  }
  return make_table(Measure::kInfluenceScore, view, std::move(scores));
}

CentralityTable influence_score(const SubgraphView& view) {
  return influence_score(view, degree_centrality(view), betweenness(view));
}

CentralityTable centrality(const SubgraphView& view, Measure measure) {
  switch (measure) {
    case Measure::kDegree: return degree_centrality(view);
    case Measure::kBetweenness: return betweenness(view);
    case Measure::kEigenvector: return eigenvector_centrality(view);
    case Measure::kInfluenceScore: return influence_score(view);
  }
  throw Error(ErrorKind::kUnknownMeasure, "unknown measure");
}

LayerStats stats(const SubgraphView& view) {
  require_nodes(view);
  LayerStats s;
  s.V = view.node_count();
  s.E = view.edge_count();
  s.rho = density(view);
  s.giant_component_applied = !is_connected(view);
  s.d = diameter(view);
  s.C = avg_clustering(view);
  s.tau = view.edge_count() == 0 ? std::nullopt : assortativity(view);
  s.l_G = avg_shortest_path(view);
  return s;
}

}  // namespace screenplaynet
