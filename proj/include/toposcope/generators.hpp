#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "toposcope/graph.hpp"

namespace toposcope {

/// Seeded synthetic topologies for tests and experiments. Only the raw
/// mt19937_64 stream is used (no std distributions), so a seed yields the
/// same graph on every standard library.
class Synth {
 public:
  explicit Synth(std::uint64_t seed) : rng_(seed) {}

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  /// Preferential attachment: a clique on m + 1 seed nodes, then each new
  /// node links to m distinct existing nodes chosen with probability
  /// proportional to degree.
  Topology barabasi_albert(std::size_t n, std::size_t m) {
    m = std::max<std::size_t>(1, m);
    TopologyBuilder b;
    for (std::size_t i = 0; i < n; ++i) b.add_node();
    std::vector<NodeId> endpoints;  // one entry per edge end
    const std::size_t seeds = std::min(n, m + 1);
    for (NodeId u = 0; u < seeds; ++u)
      for (NodeId v = u + 1; v < seeds; ++v) {
        b.add_edge(u, v);
        endpoints.push_back(u);
        endpoints.push_back(v);
      }
    for (auto u = static_cast<NodeId>(seeds); u < n; ++u) {
      std::set<NodeId> targets;
      while (targets.size() < std::min<std::size_t>(m, u)) targets.insert(endpoints[index(endpoints.size())]);
      for (NodeId v : targets) {
        b.add_edge(u, v);
        endpoints.push_back(u);
        endpoints.push_back(v);
      }
    }
    return b.build(false);
  }

  /// Random spanning tree plus every other node pair independently with
  /// probability p; always connected.
  Topology random_connected(std::size_t n, double p) {
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[index(i)]);
    TopologyBuilder b;
    for (std::size_t i = 0; i < n; ++i) b.add_node();
    std::set<std::pair<NodeId, NodeId>> edges;
    auto add = [&](NodeId u, NodeId v) {
      if (u > v) std::swap(u, v);
      if (edges.insert({u, v}).second) b.add_edge(u, v);
    };
    for (std::size_t i = 1; i < n; ++i) add(perm[i], perm[index(i)]);
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (!edges.count({u, v}) && uniform() < p) add(u, v);
    return b.build(false);
  }

  /// Capacitated copy of g with integer capacities drawn from [lo, hi].
  Topology with_capacities(const Topology& g, int lo, int hi) {
    TopologyBuilder b;
    for (const auto& label : g.labels()) b.node(label);
    g.for_each_edge([&](NodeId u, NodeId v, double) {
      b.add_edge(u, v, static_cast<double>(lo + static_cast<int>(index(static_cast<std::size_t>(hi - lo + 1)))));
    });
    return b.build(true);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace toposcope
