#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "screenplaynet/error.hpp"
#include "screenplaynet/graph_metrics.hpp"
#include "support/oracles.hpp"
#include "support/shapes.hpp"

using namespace screenplaynet;

namespace {

std::vector<double> scores_of(const CentralityTable& t) { return t.scores; }

}  // namespace

TEST(Density, ClosedForms) {
  EXPECT_DOUBLE_EQ(density(shapes::complete(4)), 1.0);
  EXPECT_DOUBLE_EQ(density(shapes::isolated(5)), 0.0);
  EXPECT_DOUBLE_EQ(density(shapes::isolated(1)), 0.0);
  EXPECT_DOUBLE_EQ(density(SubgraphView{}), 0.0);
}

TEST(Density, FormulaOnPublishedCounts) {
  // 38 nodes and 276 edges give 0.3926 with the all-pairs denominator.
  EXPECT_NEAR(2.0 * 276 / (38.0 * 37.0), 0.3926, 1e-4);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < 38 && edges.size() < 276; ++i) {
    for (std::size_t j = i + 1; j < 38 && edges.size() < 276; ++j) edges.emplace_back(i, j);
  }
  EXPECT_NEAR(density(SubgraphView::from_index_edges(38, edges)), 0.3926, 1e-4);
}

TEST(Diameter, ClosedForms) {
  EXPECT_EQ(diameter(shapes::path(4)), 3);
  EXPECT_EQ(diameter(shapes::cycle(5)), 2);
  EXPECT_EQ(diameter(shapes::complete(4)), 1);
  EXPECT_EQ(diameter(shapes::isolated(1)), 0);
  EXPECT_THROW(diameter(SubgraphView{}), Error);
}

TEST(Clustering, ClosedForms) {
  EXPECT_DOUBLE_EQ(avg_clustering(shapes::complete(3)), 1.0);
  EXPECT_DOUBLE_EQ(avg_clustering(shapes::star(5)), 0.0);
  EXPECT_NEAR(avg_clustering(shapes::paw()), 7.0 / 12.0, 1e-15);
}

TEST(Assortativity, ClosedForms) {
  auto star = assortativity(shapes::star(4));
  ASSERT_TRUE(star);
  EXPECT_NEAR(*star, -1.0, 1e-12);
  EXPECT_FALSE(assortativity(shapes::complete(4)));
  EXPECT_FALSE(assortativity(shapes::cycle(6)));
  try {
    assortativity(shapes::isolated(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoEdges);
  }
}

TEST(AvgShortestPath, ClosedForms) {
  EXPECT_NEAR(avg_shortest_path(shapes::path(3)), 4.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(avg_shortest_path(shapes::complete(4)), 1.0);
}

TEST(DegreeCentrality, ClosedForms) {
  auto star = degree_centrality(shapes::star(5));
  EXPECT_EQ(star.scores[0], 4.0);
  EXPECT_EQ(star.ranking.front(), EntityId{0});
  auto with_isolated = degree_centrality(SubgraphView::from_index_edges(3, {{0, 1}}));
  EXPECT_EQ(with_isolated.scores[2], 0.0);
}

TEST(Betweenness, ClosedForms) {
  auto star = betweenness(shapes::star(5));
  EXPECT_DOUBLE_EQ(star.scores[0], 6.0);
  for (std::size_t i = 1; i < 5; ++i) EXPECT_DOUBLE_EQ(star.scores[i], 0.0);
  EXPECT_DOUBLE_EQ(betweenness(shapes::path(3)).scores[1], 1.0);
}

TEST(Eigenvector, ClosedForms) {
  for (double s : eigenvector_centrality(shapes::complete(3)).scores) {
    EXPECT_NEAR(s, 1.0 / std::sqrt(3.0), 1e-9);
  }
  auto star = eigenvector_centrality(shapes::star(5));
  EXPECT_NEAR(star.scores[0] / star.scores[1], 2.0, 1e-9);
}

TEST(Eigenvector, OutsideGiantComponentIsZero) {
  auto v = SubgraphView::from_index_edges(6, {{0, 1}, {3, 4}, {4, 5}, {3, 5}});
  auto t = eigenvector_centrality(v);
  EXPECT_EQ(t.scores[0], 0.0);
  EXPECT_EQ(t.scores[2], 0.0);
  EXPECT_NEAR(t.scores[3], 1.0 / std::sqrt(3.0), 1e-9);
}

TEST(Eigenvector, BipartiteConverges) {
  // Plain power iteration oscillates on bipartite graphs; the shift fixes it.
  EXPECT_NO_THROW(eigenvector_centrality(shapes::path(8)));
  EXPECT_NO_THROW(eigenvector_centrality(shapes::cycle(6)));
}

TEST(Eigenvector, IterationCapRaisesNoConvergence) {
  EigenvectorOptions options;
  options.max_iterations = 2;
  try {
    eigenvector_centrality(shapes::path(9), options);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoConvergence);
  }
}

TEST(InfluenceScore, RegularGraphIsFlat) {
  for (const auto& view : {shapes::cycle(7), shapes::complete(5)}) {
    auto t = influence_score(view);
    for (double s : t.scores) EXPECT_DOUBLE_EQ(s, t.scores[0]);
  }
}

TEST(InfluenceScore, StarCenterFirst) {
  auto t = influence_score(shapes::star(5));
  EXPECT_EQ(t.ranking.front(), EntityId{0});
  EXPECT_NEAR(t.scores[0], std::sqrt(1.0 + kInfluenceEpsilon), 1e-15);
  EXPECT_DOUBLE_EQ(t.scores[1], 0.0);
}

TEST(Stats, SingleEdge) {
  auto s = stats(shapes::path(2));
  EXPECT_EQ(s.V, 2u);
  EXPECT_EQ(s.E, 1u);
  EXPECT_DOUBLE_EQ(s.rho, 1.0);
  EXPECT_EQ(s.d, 1);
  EXPECT_DOUBLE_EQ(s.C, 0.0);
  EXPECT_FALSE(s.tau);
  EXPECT_DOUBLE_EQ(s.l_G, 1.0);
  EXPECT_FALSE(s.giant_component_applied);
}

TEST(Stats, DisconnectedUsesGiantAndFlagsIt) {
  auto v = SubgraphView::from_index_edges(7, {{0, 1}, {2, 3}, {3, 4}, {4, 5}});
  auto s = stats(v);
  EXPECT_TRUE(s.giant_component_applied);
  EXPECT_EQ(s.d, 3);
  EXPECT_NEAR(s.l_G, avg_shortest_path(shapes::path(4)), 1e-15);
  EXPECT_THROW(stats(SubgraphView{}), Error);
}

TEST(Ranking, TiesBreakByAscendingId) {
  auto v = SubgraphView::from_edges({EntityId{9}, EntityId{3}, EntityId{5}, EntityId{1}},
                                    {{EntityId{1}, EntityId{3}}, {EntityId{5}, EntityId{9}}});
  auto t = degree_centrality(v);
  EXPECT_EQ(t.ranking, (std::vector<EntityId>{EntityId{1}, EntityId{3}, EntityId{5}, EntityId{9}}));
  auto e = eigenvector_centrality(shapes::cycle(5));
  EXPECT_EQ(e.ranking, (std::vector<EntityId>{EntityId{0}, EntityId{1}, EntityId{2}, EntityId{3},
                                              EntityId{4}}));
}

TEST(Centrality, MeasureNames) {
  EXPECT_EQ(parse_measure("D"), Measure::kDegree);
  EXPECT_EQ(parse_measure("Ei"), Measure::kEigenvector);
  EXPECT_EQ(parse_measure("I.S"), Measure::kInfluenceScore);
  EXPECT_EQ(parse_measure("betweenness"), Measure::kBetweenness);
  EXPECT_FALSE(parse_measure("pagerank"));
  for (Measure m : {Measure::kDegree, Measure::kBetweenness, Measure::kEigenvector,
                    Measure::kInfluenceScore}) {
    EXPECT_EQ(parse_measure(measure_name(m)), m);
  }
}

TEST(Oracles, RandomGraphsMatchBruteForce) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> size(1, 40);
  std::uniform_real_distribution<double> prob(0.02, 0.9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = size(rng);
    const auto edges = oracle::random_graph(rng, n, prob(rng));
    const auto a = oracle::adjacency(n, edges);
    const auto view = SubgraphView::from_index_edges(n, edges);
    SCOPED_TRACE("trial " + std::to_string(trial) + " n=" + std::to_string(n));

    EXPECT_NEAR(density(view), oracle::density(a), 1e-9);
    EXPECT_EQ(diameter(view), oracle::diameter(a));
    EXPECT_NEAR(avg_clustering(view), oracle::avg_clustering(a), 1e-9);
    EXPECT_NEAR(avg_shortest_path(view), oracle::avg_shortest_path(a), 1e-9);
    if (!edges.empty()) {
      auto got = assortativity(view);
      auto want = oracle::assortativity(a);
      ASSERT_EQ(got.has_value(), want.has_value());
      if (got) EXPECT_NEAR(*got, *want, 1e-9);
    }
    auto deg = scores_of(degree_centrality(view));
    auto deg_oracle = oracle::degrees(a);
    auto btw = scores_of(betweenness(view));
    auto btw_oracle = oracle::betweenness(a);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(deg[i], deg_oracle[i]);
      EXPECT_NEAR(btw[i], btw_oracle[i], 1e-9);
    }
    auto eig = scores_of(eigenvector_centrality(view));
    auto eig_oracle = oracle::eigenvector(a);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(eig[i], eig_oracle[i], 1e-6);
  }
}

TEST(Properties, RelabelingIsInvariant) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 5 + rng() % 25;
    auto edges = oracle::random_graph(rng, n, 0.2);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    decltype(edges) relabeled;
    for (auto [u, v] : edges) relabeled.emplace_back(perm[u], perm[v]);
    auto a = SubgraphView::from_index_edges(n, edges);
    auto b = SubgraphView::from_index_edges(n, relabeled);
    auto sa = stats(a);
    auto sb = stats(b);
    EXPECT_EQ(sa.E, sb.E);
    EXPECT_EQ(sa.d, sb.d);
    EXPECT_NEAR(sa.C, sb.C, 1e-12);
    EXPECT_NEAR(sa.l_G, sb.l_G, 1e-12);
    EXPECT_EQ(sa.tau.has_value(), sb.tau.has_value());
    if (sa.tau && sb.tau) EXPECT_NEAR(*sa.tau, *sb.tau, 1e-12);
    auto ba = betweenness(a).scores;
    auto bb = betweenness(b).scores;
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(ba[i], bb[perm[i]], 1e-9);
  }
}

TEST(Properties, AddingAnEdgeIsMonotone) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + rng() % 20;
    // Connected base: a random spanning path plus noise.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 1; i < n; ++i) edges.emplace_back(i - 1, i);
    for (auto e : oracle::random_graph(rng, n, 0.1)) edges.push_back(e);
    auto before = SubgraphView::from_index_edges(n, edges);
    std::size_t u = rng() % n;
    std::size_t v = rng() % n;
    if (u == v) continue;
    edges.emplace_back(u, v);
    auto after = SubgraphView::from_index_edges(n, edges);
    EXPECT_GE(density(after), density(before));
    EXPECT_LE(avg_shortest_path(after), avg_shortest_path(before) + 1e-12);
    EXPECT_LE(diameter(after), diameter(before));
  }
}

TEST(Properties, EigenvectorScalingKeepsRanking) {
  auto view = shapes::paw();
  auto t = eigenvector_centrality(view);
  std::vector<double> scaled = t.scores;
  for (double& s : scaled) s *= 3.7;
  std::vector<std::size_t> order(scaled.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scaled[a] > scaled[b]; });
  for (std::size_t i = 0; i < order.size(); ++i) EXPECT_EQ(t.ranking[i], view.node_ids()[order[i]]);
}
