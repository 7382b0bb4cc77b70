#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "toposcope/generators.hpp"
#include "toposcope/graph.hpp"
#include "toposcope/paths.hpp"

namespace toposcope {
namespace {

TEST(Components, PathIsOneComponent) {
  const auto g = make_topology(3, {{0, 1}, {1, 2}});
  const auto cc = connected_components(g);
  EXPECT_EQ(cc.count(), 1u);
  EXPECT_EQ(cc.gcc_size(), 3u);
}

TEST(Components, EqualSizedComponentsPreferSmallestNode) {
  const auto g = make_topology(4, {{2, 3}, {0, 1}});
  const auto cc = connected_components(g);
  ASSERT_EQ(cc.count(), 2u);
  EXPECT_EQ(cc.component_sizes, (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(cc.gcc_id, cc.component_id[0]);
}

TEST(Components, TriangleEdgeAndIsolatedNode) {
  // triangle {0,1,2}, edge {3,4}, isolated 5
  const auto g = make_topology(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}});
  const auto cc = connected_components(g);
  EXPECT_EQ(cc.component_sizes, (std::vector<std::size_t>{3, 2, 1}));
  EXPECT_EQ(cc.gcc_size(), 3u);
  std::size_t total = 0;
  for (auto s : cc.component_sizes) total += s;
  EXPECT_EQ(total, g.size());
}

TEST(ExtractGcc, ConnectedInputIsCopiedUnchanged) {
  const auto star = make_topology(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  EXPECT_EQ(extract_gcc(star), star);
}

TEST(ExtractGcc, DropsIsolatedNodeAndKeepsLabels) {
  TopologyBuilder b;
  b.add_edge("x", "y");
  b.add_edge("y", "z");
  b.add_edge("z", "x");
  b.node("lonely");
  const auto gcc = extract_gcc(b.build(false));
  EXPECT_EQ(gcc.size(), 3u);
  EXPECT_EQ(gcc.labels(), (std::vector<std::string>{"x", "y", "z"}));
}

TEST(ExtractGcc, TieGoesToComponentOfSmallestId) {
  const auto g = make_topology(8, {{4, 5}, {5, 6}, {6, 7}, {0, 1}, {1, 2}, {2, 3}});
  const auto gcc = extract_gcc(g);
  EXPECT_EQ(gcc.labels(), (std::vector<std::string>{"0", "1", "2", "3"}));
}

TEST(ExtractGcc, EmptyTopologyIsAnError) {
  EXPECT_THROW(extract_gcc(Topology{}), InputError);
}

TEST(ExtractGcc, Idempotent) {
  Synth synth(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = synth.random_connected(12, 0.1);
    // knock out a few edges' worth of nodes by inducing on a random subset
    std::vector<NodeId> keep;
    for (NodeId u = 0; u < g.size(); ++u)
      if (synth.uniform() < 0.7) keep.push_back(u);
    if (keep.empty()) continue;
    const auto sub = g.induced(keep);
    const auto once = extract_gcc(sub);
    EXPECT_EQ(extract_gcc(once), once);
    EXPECT_TRUE(is_connected(once));
  }
}

TEST(Builder, CollapsesMultiEdgesAndDropsSelfLoops) {
  TopologyBuilder b;
  b.add_edge("a", "b", 2.0);
  b.add_edge("b", "a", 3.0);
  b.add_edge("a", "a", 1.0);
  const auto g = b.build(true);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(*g.capacity(0, 1), 5.0);
  EXPECT_DOUBLE_EQ(*g.capacity(1, 0), 5.0);
  EXPECT_EQ(b.multi_edges_collapsed(), 1u);
  EXPECT_EQ(b.self_loops_dropped(), 1u);
}

TEST(Builder, RejectsNonPositiveCapacity) {
  TopologyBuilder b;
  EXPECT_THROW(b.add_edge("a", "b", 0.0), InputError);
  EXPECT_THROW(b.add_edge("a", "b", -1.0), InputError);
}

TEST(Bfs, PathDistancesAndCounts) {
  const auto row = bfs_row(make_topology(3, {{0, 1}, {1, 2}}), 0);
  EXPECT_EQ(row.dist, (std::vector<double>{0, 1, 2}));
  EXPECT_EQ(row.sigma, (std::vector<double>{1, 1, 1}));
}

TEST(Bfs, FourCycleHasTwoGeodesicsToOppositeNode) {
  const auto row = bfs_row(make_topology(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), 0);
  EXPECT_EQ(row.dist[2], 2.0);
  EXPECT_EQ(row.sigma[2], 2.0);
}

TEST(Bfs, UnreachableNode) {
  const auto row = bfs_row(make_topology(2, {}), 0);
  EXPECT_EQ(row.dist[1], kInfinity);
  EXPECT_EQ(row.sigma[1], 0.0);
}

TEST(Dijkstra, InverseCapacityLength) {
  const auto row = dijkstra_row(make_capacitated(2, {{0, 1, 10.0}}), 0);
  EXPECT_DOUBLE_EQ(row.dist[1], 0.1);
}

TEST(Dijkstra, EqualLengthPathsAreBothCounted) {
  // a-b and b-c at capacity 1, a-c at 0.5: 1 + 1 == 1 / 0.5
  const auto row = dijkstra_row(make_capacitated(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 0.5}}), 0);
  EXPECT_DOUBLE_EQ(row.dist[2], 2.0);
  EXPECT_EQ(row.sigma[2], 2.0);
}

TEST(Dijkstra, TieSurvivesRoundingNoise) {
  // 0.1 + 0.2 != 0.3 in binary floating point
  const auto row = dijkstra_row(make_capacitated(3, {{0, 1, 10.0}, {1, 2, 5.0}, {0, 2, 1.0 / 0.3}}), 0);
  EXPECT_EQ(row.sigma[2], 2.0);
}

TEST(Dijkstra, UniformCapacitiesMatchHopCounts) {
  Synth synth(11);
  const auto g = synth.random_connected(15, 0.15);
  TopologyBuilder b;
  for (const auto& l : g.labels()) b.node(l);
  g.for_each_edge([&](NodeId u, NodeId v, double) { b.add_edge(u, v, 4.0); });
  const auto cap = b.build(true);
  for (NodeId s = 0; s < g.size(); ++s) {
    const auto hop = bfs_row(g, s);
    const auto w = dijkstra_row(cap, s);
    for (NodeId t = 0; t < g.size(); ++t) {
      EXPECT_DOUBLE_EQ(w.dist[t], hop.dist[t] / 4.0);
      EXPECT_EQ(w.sigma[t], hop.sigma[t]);
    }
  }
}

TEST(PathProperties, SymmetryTriangleInequalityAndSigmaOracle) {
  Synth synth(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + synth.index(7);
    const auto g = synth.random_connected(n, 0.3);
    const auto cap = synth.with_capacities(g, 1, 4);
    const auto census = oracle::enumerate_geodesics(g, false);
    std::vector<DistanceRow> hop, w;
    for (NodeId s = 0; s < n; ++s) {
      hop.push_back(bfs_row(g, s));
      w.push_back(dijkstra_row(cap, s));
    }
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = 0; b < n; ++b) {
        EXPECT_EQ(hop[a].dist[b], hop[b].dist[a]);
        EXPECT_NEAR(w[a].dist[b], w[b].dist[a], 1e-12);
        if (a != b) EXPECT_EQ(hop[a].sigma[b], census.count[a * n + b]);
        for (NodeId c = 0; c < n; ++c) {
          EXPECT_LE(hop[a].dist[c], hop[a].dist[b] + hop[b].dist[c]);
          EXPECT_LE(w[a].dist[c], w[a].dist[b] + w[b].dist[c] + 1e-12);
        }
      }
  }
}

}  // namespace
}  // namespace toposcope
