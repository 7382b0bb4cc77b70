#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "toposcope/graph.hpp"

namespace toposcope {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative tolerance under which two weighted path lengths count as equal.
inline constexpr double kGeodesicTolerance = 1e-9;

inline bool same_length(double a, double b) {
  return std::abs(a - b) <= kGeodesicTolerance * std::max(std::abs(a), std::abs(b));
}

/// Edge length used for weighted geodesics.
inline double edge_length(const Neighbor& nb) { return 1.0 / nb.capacity; }

struct DistanceRow {
  NodeId source = 0;
  std::vector<double> dist;   // kInfinity when unreachable
  std::vector<double> sigma;  // number of shortest paths, 0 when unreachable
};

/// A single-source shortest-path sweep: the distance row plus the reachable
/// nodes listed in non-decreasing distance order (source first).
struct PathSweep {
  DistanceRow row;
  std::vector<NodeId> order;
  bool weighted = false;

  /// True when the arc v -> w lies on some shortest path from the source.
  bool on_geodesic(NodeId v, const Neighbor& w) const {
    const double dv = row.dist[v];
    const double dw = row.dist[w.node];
    if (!weighted) return dv + 1.0 == dw;
    return dv < dw && same_length(dv + edge_length(w), dw);
  }
};

inline PathSweep bfs_sweep(const Topology& g, NodeId source) {
  PathSweep s;
  s.row.source = source;
  s.row.dist.assign(g.size(), kInfinity);
  s.row.sigma.assign(g.size(), 0.0);
  s.order.reserve(g.size());
  s.row.dist[source] = 0.0;
  s.row.sigma[source] = 1.0;
  s.order.push_back(source);
  for (std::size_t head = 0; head < s.order.size(); ++head) {
    const NodeId u = s.order[head];
    const double next = s.row.dist[u] + 1.0;
    for (const auto& nb : g.neighbors(u)) {
      double& dv = s.row.dist[nb.node];
      if (dv == kInfinity) {
        dv = next;
        s.order.push_back(nb.node);
      }
      if (dv == next) s.row.sigma[nb.node] += s.row.sigma[u];
    }
  }
  return s;
}

/// Dijkstra over edge lengths 1/capacity. Path counts are accumulated after
/// the distances settle, treating lengths equal within kGeodesicTolerance as
/// ties.
inline PathSweep dijkstra_sweep(const Topology& g, NodeId source) {
  PathSweep s;
  s.weighted = true;
  s.row.source = source;
  s.row.dist.assign(g.size(), kInfinity);
  s.row.sigma.assign(g.size(), 0.0);
  s.order.reserve(g.size());

  using Entry = std::pair<double, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::vector<char> settled(g.size(), 0);
  s.row.dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    s.order.push_back(u);
    for (const auto& nb : g.neighbors(u)) {
      const double cand = d + edge_length(nb);
      if (cand < s.row.dist[nb.node]) {
        s.row.dist[nb.node] = cand;
        heap.emplace(cand, nb.node);
      }
    }
  }

  s.row.sigma[source] = 1.0;
  for (std::size_t i = 1; i < s.order.size(); ++i) {
    const NodeId w = s.order[i];
    double paths = 0.0;
    for (const auto& nb : g.neighbors(w)) {
      const Neighbor back{w, nb.capacity};
      if (s.on_geodesic(nb.node, back)) paths += s.row.sigma[nb.node];
    }
    s.row.sigma[w] = paths;
  }
  return s;
}

/// Hop-count sweep on binary topologies, inverse-capacity sweep otherwise.
inline PathSweep shortest_path_sweep(const Topology& g, NodeId source) {
  return g.capacitated() ? dijkstra_sweep(g, source) : bfs_sweep(g, source);
}

inline DistanceRow bfs_row(const Topology& g, NodeId source) {
  return bfs_sweep(g, source).row;
}

inline DistanceRow dijkstra_row(const Topology& g, NodeId source) {
  return dijkstra_sweep(g, source).row;
}

}  // namespace toposcope
