#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "toposcope/error.hpp"

namespace toposcope {

using NodeId = std::uint32_t;

struct Neighbor {
  NodeId node;
  double capacity;  // 1.0 on binary topologies
};

/// Immutable undirected simple graph in compressed adjacency form.
///
/// Node ids are dense in [0, size()). Neighbor lists are sorted by id and the
/// adjacency is symmetric, so every edge {u, v} appears once in each list with
/// the same capacity. On binary topologies every capacity reads as 1.0.
class Topology {
 public:
  Topology() = default;

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  bool capacitated() const { return capacitated_; }
  std::size_t edge_count() const { return adjacency_.size() / 2; }

  std::span<const Neighbor> neighbors(NodeId u) const {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

  /// Sum of incident capacities (equals degree() on binary topologies).
  double weighted_degree(NodeId u) const {
    double sum = 0.0;
    for (const auto& nb : neighbors(u)) sum += nb.capacity;
    return sum;
  }

  std::optional<double> capacity(NodeId u, NodeId v) const {
    auto nbs = neighbors(u);
    auto it = std::lower_bound(nbs.begin(), nbs.end(), v,
                               [](const Neighbor& n, NodeId x) { return n.node < x; });
    if (it == nbs.end() || it->node != v) return std::nullopt;
    return it->capacity;
  }
  bool has_edge(NodeId u, NodeId v) const { return capacity(u, v).has_value(); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(NodeId u) const { return labels_[u]; }

  /// Calls fn(u, v, capacity) once per edge with u < v, in ascending (u, v).
  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (NodeId u = 0; u < size(); ++u)
      for (const auto& nb : neighbors(u))
        if (u < nb.node) fn(u, nb.node, nb.capacity);
  }

  /// Subgraph induced by `keep` (ascending, unique). Relative id order and
  /// labels are preserved, so node keep[i] becomes node i.
  Topology induced(std::span<const NodeId> keep) const {
    std::vector<NodeId> remap(size(), kAbsent);
    for (std::size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = static_cast<NodeId>(i);
    Topology out;
    out.capacitated_ = capacitated_;
    out.offsets_.reserve(keep.size() + 1);
    out.labels_.reserve(keep.size());
    for (NodeId old : keep) {
      out.labels_.push_back(labels_[old]);
      for (const auto& nb : neighbors(old))
        if (remap[nb.node] != kAbsent) out.adjacency_.push_back({remap[nb.node], nb.capacity});
      out.offsets_.push_back(out.adjacency_.size());
    }
    return out;
  }

  /// Same graph with every capacity multiplied by `factor`.
  Topology scaled(double factor) const {
    Topology out = *this;
    for (auto& nb : out.adjacency_) nb.capacity *= factor;
    return out;
  }

  friend bool operator==(const Topology& a, const Topology& b) {
    if (a.capacitated_ != b.capacitated_ || a.labels_ != b.labels_ || a.offsets_ != b.offsets_)
      return false;
    for (std::size_t i = 0; i < a.adjacency_.size(); ++i)
      if (a.adjacency_[i].node != b.adjacency_[i].node ||
          a.adjacency_[i].capacity != b.adjacency_[i].capacity)
        return false;
    return true;
  }

 private:
  friend class TopologyBuilder;
  static constexpr NodeId kAbsent = static_cast<NodeId>(-1);

  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<std::string> labels_;
  bool capacitated_ = false;
};

/// Accumulates labeled nodes and edges, collapsing multi-edges (capacities
/// summed) and dropping self-loops.
class TopologyBuilder {
 public:
  /// Id of `label`, assigned in first-appearance order.
  NodeId node(const std::string& label) {
    auto [it, inserted] = ids_.try_emplace(label, static_cast<NodeId>(labels_.size()));
    if (inserted) labels_.push_back(label);
    return it->second;
  }

  NodeId add_node() { return node(std::to_string(labels_.size())); }

  void add_edge(NodeId u, NodeId v, double capacity = 1.0) {
    if (u >= labels_.size() || v >= labels_.size())
      throw InputError("edge references unknown node id");
    if (!(capacity > 0.0) || !std::isfinite(capacity))
      throw InputError("edge capacity must be finite and > 0");
    if (u == v) {
      ++self_loops_dropped_;
      return;
    }
    if (u > v) std::swap(u, v);
    const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
    auto [it, inserted] = edge_index_.try_emplace(key, edges_.size());
    if (inserted) {
      edges_.push_back({u, v, capacity});
    } else {
      edges_[it->second].capacity += capacity;
      ++multi_edges_collapsed_;
    }
  }

  void add_edge(const std::string& a, const std::string& b, double capacity = 1.0) {
    const NodeId u = node(a);
    const NodeId v = node(b);
    add_edge(u, v, capacity);
  }

  std::size_t node_count() const { return labels_.size(); }
  std::size_t multi_edges_collapsed() const { return multi_edges_collapsed_; }
  std::size_t self_loops_dropped() const { return self_loops_dropped_; }

  Topology build(bool capacitated) const {
    const std::size_t n = labels_.size();
    std::vector<std::size_t> degree(n, 0);
    for (const auto& e : edges_) {
      ++degree[e.u];
      ++degree[e.v];
    }
    Topology g;
    g.capacitated_ = capacitated;
    g.labels_ = labels_;
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
    g.adjacency_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& e : edges_) {
      const double cap = capacitated ? e.capacity : 1.0;
      g.adjacency_[fill[e.u]++] = {e.v, cap};
      g.adjacency_[fill[e.v]++] = {e.u, cap};
    }
    for (std::size_t i = 0; i < n; ++i)
      std::sort(g.adjacency_.begin() + g.offsets_[i], g.adjacency_.begin() + g.offsets_[i + 1],
                [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    return g;
  }

 private:
  struct Edge {
    NodeId u, v;
    double capacity;
  };
  std::unordered_map<std::string, NodeId> ids_;
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::size_t> edge_index_;
  std::size_t multi_edges_collapsed_ = 0;
  std::size_t self_loops_dropped_ = 0;
};

/// Binary topology on nodes labeled "0".."n-1".
inline Topology make_topology(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges) {
  TopologyBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_node();
  for (auto [u, v] : edges) b.add_edge(u, v);
  return b.build(false);
}

inline Topology make_topology(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> edges) {
  return make_topology(n, std::span<const std::pair<NodeId, NodeId>>(edges.begin(), edges.size()));
}

struct CapacitatedEdge {
  NodeId u, v;
  double capacity;
};

inline Topology make_capacitated(std::size_t n, std::span<const CapacitatedEdge> edges) {
  TopologyBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_node();
  for (const auto& e : edges) b.add_edge(e.u, e.v, e.capacity);
  return b.build(true);
}

inline Topology make_capacitated(std::size_t n, std::initializer_list<CapacitatedEdge> edges) {
  return make_capacitated(n, std::span<const CapacitatedEdge>(edges.begin(), edges.size()));
}

struct ComponentLabeling {
  std::vector<std::uint32_t> component_id;
  std::vector<std::size_t> component_sizes;
  std::uint32_t gcc_id = 0;

  std::size_t count() const { return component_sizes.size(); }
  std::size_t gcc_size() const { return component_sizes.empty() ? 0 : component_sizes[gcc_id]; }
};

/// Component ids are assigned in order of each component's smallest node id;
/// the giant component is the first one of maximum size.
inline ComponentLabeling connected_components(const Topology& g) {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  ComponentLabeling out;
  out.component_id.assign(g.size(), kUnset);
  std::vector<NodeId> stack;
  for (NodeId root = 0; root < g.size(); ++root) {
    if (out.component_id[root] != kUnset) continue;
    const auto cid = static_cast<std::uint32_t>(out.component_sizes.size());
    std::size_t members = 0;
    out.component_id[root] = cid;
    stack.push_back(root);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      ++members;
      for (const auto& nb : g.neighbors(u)) {
        if (out.component_id[nb.node] == kUnset) {
          out.component_id[nb.node] = cid;
          stack.push_back(nb.node);
        }
      }
    }
    out.component_sizes.push_back(members);
    if (members > out.component_sizes[out.gcc_id]) out.gcc_id = cid;
  }
  return out;
}

inline bool is_connected(const Topology& g) {
  return !g.empty() && connected_components(g).count() == 1;
}

/// Members of component `cid`, ascending.
inline std::vector<NodeId> component_members(const ComponentLabeling& cc, std::uint32_t cid) {
  std::vector<NodeId> members;
  members.reserve(cc.component_sizes[cid]);
  for (NodeId u = 0; u < cc.component_id.size(); ++u)
    if (cc.component_id[u] == cid) members.push_back(u);
  return members;
}

inline Topology extract_gcc(const Topology& g) {
  if (g.empty()) throw InputError("empty topology");
  const auto cc = connected_components(g);
  if (cc.count() == 1) return g;
  const auto keep = component_members(cc, cc.gcc_id);
  return g.induced(keep);
}

}  // namespace toposcope
