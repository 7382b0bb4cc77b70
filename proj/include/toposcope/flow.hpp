#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "toposcope/attack.hpp"
#include "toposcope/centrality.hpp"
#include "toposcope/error.hpp"
#include "toposcope/graph.hpp"

namespace toposcope {

/// Residual network of an undirected capacitated topology. Each edge {u, v}
/// becomes a pair of opposed arcs, each carrying the full edge capacity, so
/// that pushing f along u->v leaves c - f on u->v and c + f on v->u.
class FlowNetwork {
 public:
  explicit FlowNetwork(const Topology& g) : n_(g.size()), first_(g.size() + 1, 0) {
    for (NodeId u = 0; u < n_; ++u) first_[u + 1] = first_[u] + g.degree(u);
    head_.resize(first_[n_]);
    capacity_.resize(first_[n_]);
    reverse_.resize(first_[n_]);
    std::vector<std::size_t> fill(first_.begin(), first_.end() - 1);
    g.for_each_edge([&](NodeId u, NodeId v, double cap) {
      const std::size_t a = fill[u]++, b = fill[v]++;
      head_[a] = v;
      head_[b] = u;
      capacity_[a] = capacity_[b] = cap;
      reverse_[a] = b;
      reverse_[b] = a;
    });
    residual_ = capacity_;
  }

  std::size_t size() const { return n_; }

  /// Edmonds-Karp: augments along shortest residual paths found by BFS.
  double max_flow(NodeId s, NodeId t) {
    residual_ = capacity_;
    double total = 0.0;
    std::vector<std::size_t> via(n_);
    std::vector<NodeId> queue;
    queue.reserve(n_);
    while (true) {
      std::fill(via.begin(), via.end(), kNone);
      via[s] = kSource;
      queue.clear();
      queue.push_back(s);
      for (std::size_t head = 0; head < queue.size() && via[t] == kNone; ++head) {
        const NodeId u = queue[head];
        for (std::size_t a = first_[u]; a < first_[u + 1]; ++a) {
          const NodeId v = head_[a];
          if (via[v] == kNone && residual_[a] > 0.0) {
            via[v] = a;
            queue.push_back(v);
          }
        }
      }
      if (via[t] == kNone) break;
      double push = std::numeric_limits<double>::infinity();
      for (NodeId v = t; v != s; v = head_[reverse_[via[v]]]) push = std::min(push, residual_[via[v]]);
      for (NodeId v = t; v != s; v = head_[reverse_[via[v]]]) {
        residual_[via[v]] -= push;
        residual_[reverse_[via[v]]] += push;
      }
      total += push;
    }
    return total;
  }

  /// Nodes reachable from `s` in the residual network left by the last
  /// max_flow call: the source side of a minimum cut.
  std::vector<char> source_side(NodeId s) const {
    std::vector<char> seen(n_, 0);
    std::vector<NodeId> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (std::size_t a = first_[u]; a < first_[u + 1]; ++a)
        if (!seen[head_[a]] && residual_[a] > 0.0) {
          seen[head_[a]] = 1;
          stack.push_back(head_[a]);
        }
    }
    return seen;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  static constexpr std::size_t kSource = static_cast<std::size_t>(-2);

  std::size_t n_;
  std::vector<std::size_t> first_;
  std::vector<NodeId> head_;
  std::vector<double> capacity_;
  std::vector<double> residual_;
  std::vector<std::size_t> reverse_;
};

namespace detail {
inline NodeId residual_id(std::span<const NodeId> keep, NodeId original) {
  auto it = std::lower_bound(keep.begin(), keep.end(), original);
  if (it == keep.end() || *it != original) throw ComputeError("flow endpoint has been removed");
  return static_cast<NodeId>(it - keep.begin());
}
}  // namespace detail

/// Maximum s-t flow after deleting the nodes in `removed` (node capacities
/// are unlimited; only links constrain the flow).
inline double max_flow(const Topology& g, NodeId s, NodeId t, std::span<const NodeId> removed = {}) {
  if (s >= g.size() || t >= g.size()) throw ComputeError("flow endpoint out of range");
  if (s == t) throw ComputeError("flow endpoints must differ");
  const auto keep = survivors(g.size(), removed);
  const NodeId rs = detail::residual_id(keep, s);
  const NodeId rt = detail::residual_id(keep, t);
  FlowNetwork net(g.induced(keep));
  return net.max_flow(rs, rt);
}

/// Gomory-Hu flow-equivalent tree (Gusfield): parent[i] and the s-t max
/// flow between i and parent[i], for i >= 1. Node 0 is the root.
struct FlowTree {
  std::vector<NodeId> parent;
  std::vector<double> flow;
};

inline FlowTree flow_equivalent_tree(const Topology& g) {
  const std::size_t n = g.size();
  FlowTree tree{std::vector<NodeId>(n, 0), std::vector<double>(n, 0.0)};
  FlowNetwork net(g);
  for (NodeId s = 1; s < n; ++s) {
    const NodeId t = tree.parent[s];
    tree.flow[s] = net.max_flow(s, t);
    const auto side = net.source_side(s);
    for (NodeId i = s + 1; i < n; ++i)
      if (side[i] && tree.parent[i] == t) tree.parent[i] = s;
  }
  return tree;
}

/// Sum of max_flow over all unordered pairs of surviving nodes.
///
/// Computed from the flow-equivalent tree: the max flow between two nodes is
/// the lightest tree edge on their path, so adding tree edges from heaviest
/// to lightest and joining components of sizes a and b contributes
/// weight * a * b. This needs N - 1 max-flow runs instead of N (N - 1) / 2.
inline double aggregate_max_flow(const Topology& g, std::span<const NodeId> removed = {}) {
  const auto keep = survivors(g.size(), removed);
  if (keep.size() < 2) throw ComputeError("fewer than two surviving nodes");
  const Topology residual = g.induced(keep);
  const FlowTree tree = flow_equivalent_tree(residual);
  const std::size_t n = residual.size();

  std::vector<NodeId> edges(n - 1);
  std::iota(edges.begin(), edges.end(), NodeId{1});
  std::stable_sort(edges.begin(), edges.end(),
                   [&](NodeId a, NodeId b) { return tree.flow[a] > tree.flow[b]; });

  std::vector<NodeId> root(n);
  std::vector<std::size_t> members(n, 1);
  std::iota(root.begin(), root.end(), NodeId{0});
  auto find = [&](NodeId x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  double total = 0.0;
  for (NodeId child : edges) {
    const NodeId a = find(child), b = find(tree.parent[child]);
    total += tree.flow[child] * static_cast<double>(members[a]) * static_cast<double>(members[b]);
    if (members[a] < members[b]) {
      root[a] = b;
      members[b] += members[a];
    } else {
      root[b] = a;
      members[a] += members[b];
    }
  }
  return total;
}

/// Same quantity as aggregate_max_flow, one Edmonds-Karp run per pair in
/// ascending (s, t) order.
inline double aggregate_max_flow_pairwise(const Topology& g, std::span<const NodeId> removed = {}) {
  const auto keep = survivors(g.size(), removed);
  if (keep.size() < 2) throw ComputeError("fewer than two surviving nodes");
  FlowNetwork net(g.induced(keep));
  double total = 0.0;
  for (NodeId s = 0; s < keep.size(); ++s)
    for (NodeId t = s + 1; t < keep.size(); ++t) total += net.max_flow(s, t);
  return total;
}

struct CapacityPoint {
  std::size_t k = 0;
  double agg_max_flow = 0.0;
};

struct CapacityTrace {
  IndexKind driver = IndexKind::DC;
  AttackMode mode = AttackMode::simultaneous;
  std::vector<CapacityPoint> steps;
  std::vector<NodeId> removal_order;
};

/// Aggregate max flow after each removal step of a centrality-driven attack.
/// Rankings use the capacity-weighted index variants.
inline CapacityTrace run_capacity_attack(const Topology& g, const AttackPlan& plan,
                                         double damping = kDefaultDamping) {
  if (plan.driver == IndexKind::PG && g.capacitated()) throw ComputeError("weighted PageRank out of scope");
  plan.validate(g.size());
  CapacityTrace trace;
  trace.driver = plan.driver;
  trace.mode = plan.mode;
  trace.removal_order = removal_sequence(g, plan.driver, plan.mode, plan.steps.back(), damping);
  trace.steps.resize(plan.steps.size());
  parallel_for(plan.steps.size(), [&](std::size_t i) {
    const std::size_t k = plan.steps[i];
    trace.steps[i] = {k, aggregate_max_flow(g, std::span<const NodeId>(trace.removal_order.data(), k))};
  });
  return trace;
}

inline MetricSeries series_of(const CapacityTrace& t) {
  MetricSeries s{t.driver, t.mode, {}, {}};
  for (const auto& p : t.steps) {
    s.steps.push_back(p.k);
    s.values.push_back(p.agg_max_flow);
  }
  return s;
}

inline EnvelopeReport envelope(std::span<const CapacityTrace> traces) {
  std::vector<MetricSeries> series;
  for (const auto& t : traces) series.push_back(series_of(t));
  return envelope(std::span<const MetricSeries>(series), Metric::agg_max_flow);
}

}  // namespace toposcope
