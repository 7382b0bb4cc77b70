#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "toposcope/error.hpp"
#include "toposcope/graph.hpp"
#include "toposcope/parallel.hpp"
#include "toposcope/paths.hpp"

namespace toposcope {

enum class IndexKind { DC, BC, CC, HC, ECC, EC, PG };

inline constexpr std::array<IndexKind, 7> kAllIndexKinds = {
    IndexKind::DC, IndexKind::BC, IndexKind::CC, IndexKind::HC,
    IndexKind::ECC, IndexKind::EC, IndexKind::PG};

inline constexpr double kDefaultDamping = 0.85;

inline std::string_view to_string(IndexKind k) {
  switch (k) {
    case IndexKind::DC: return "DC";
    case IndexKind::BC: return "BC";
    case IndexKind::CC: return "CC";
    case IndexKind::HC: return "HC";
    case IndexKind::ECC: return "ECC";
    case IndexKind::EC: return "EC";
    case IndexKind::PG: return "PG";
  }
  return "?";
}

inline std::optional<IndexKind> parse_index_kind(std::string_view text) {
  std::string upper(text);
  for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  for (auto k : kAllIndexKinds)
    if (to_string(k) == upper) return k;
  return std::nullopt;
}

struct CentralityVector {
  IndexKind kind = IndexKind::DC;
  std::vector<double> scores;
  std::optional<double> damping;     // PG only
  std::optional<double> eigenvalue;  // EC only

  std::size_t size() const { return scores.size(); }
};

struct GraphCentralitySummary {
  double integration = 0.0;     // sum of node scores
  double unipolarity = 0.0;     // maximum node score
  double centralization = 0.0;  // sum of differences from the minimum score
};

namespace detail {

inline void require_nodes(const Topology& g, std::size_t min_nodes) {
  if (g.size() < min_nodes) throw ComputeError("degenerate graph");
}

/// Scores derived from one shortest-path sweep per source.
struct PathIndices {
  std::vector<double> bc, cc, hc, ecc;
};

/// Computes the geodesic-based indices with one sweep per source. With
/// `per_component` false, CC and ECC require a connected graph; with it set,
/// they are evaluated inside each node's own component (component-local N,
/// isolated nodes score 0). BC accumulation (Brandes) is skipped unless
/// `with_betweenness`.
inline PathIndices path_indices(const Topology& g, bool with_betweenness, bool per_component) {
  const std::size_t n = g.size();
  PathIndices out;
  out.cc.assign(n, 0.0);
  out.hc.assign(n, 0.0);
  out.ecc.assign(n, 0.0);
  if (with_betweenness) out.bc.assign(n, 0.0);
  if (n == 0) return out;

  const std::size_t block = std::max<std::size_t>(1, 4 * thread_count());
  std::vector<std::vector<double>> deltas(with_betweenness ? block : 0);
  std::vector<char> disconnected(block, 0);

  for (std::size_t first = 0; first < n; first += block) {
    const std::size_t count = std::min(block, n - first);
    parallel_for(count, [&](std::size_t slot) {
      const auto source = static_cast<NodeId>(first + slot);
      const PathSweep sweep = shortest_path_sweep(g, source);
      const auto& dist = sweep.row.dist;
      const std::size_t reached = sweep.order.size();
      double sum_dist = 0.0, sum_inv = 0.0;
      for (std::size_t i = 1; i < reached; ++i) {
        const double d = dist[sweep.order[i]];
        sum_dist += d;
        sum_inv += 1.0 / d;
      }
      const double far = dist[sweep.order.back()];
      disconnected[slot] = reached < n;
      out.hc[source] = n > 1 ? sum_inv / static_cast<double>(n - 1) : 0.0;
      if (reached > 1) {
        out.cc[source] = static_cast<double>(reached - 1) / sum_dist;
        out.ecc[source] = 1.0 / far;
      }
      if (!with_betweenness) return;

      auto& delta = deltas[slot];
      delta.assign(n, 0.0);
      const auto& sigma = sweep.row.sigma;
      for (std::size_t i = reached; i-- > 1;) {
        const NodeId w = sweep.order[i];
        const double coeff = (1.0 + delta[w]) / sigma[w];
        for (const auto& nb : g.neighbors(w)) {
          if (sweep.on_geodesic(nb.node, Neighbor{w, nb.capacity}))
            delta[nb.node] += sigma[nb.node] * coeff;
        }
      }
      delta[source] = 0.0;
    });
    if (!per_component)
      for (std::size_t slot = 0; slot < count; ++slot)
        if (disconnected[slot]) throw ComputeError("closeness undefined across components");
    if (with_betweenness)
      for (std::size_t slot = 0; slot < count; ++slot)
        for (std::size_t v = 0; v < n; ++v) out.bc[v] += deltas[slot][v];
  }

  if (with_betweenness) {
    // Each unordered pair was counted from both endpoints.
    const double scale = n > 2 ? 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2)) : 0.0;
    for (auto& b : out.bc) b *= scale;
  }
  return out;
}

}  // namespace detail

inline CentralityVector degree_centrality(const Topology& g) {
  detail::require_nodes(g, 2);
  CentralityVector c{IndexKind::DC, std::vector<double>(g.size()), {}, {}};
  const double denom = static_cast<double>(g.size() - 1);
  for (NodeId u = 0; u < g.size(); ++u) c.scores[u] = g.weighted_degree(u) / denom;
  return c;
}

inline CentralityVector betweenness_centrality(const Topology& g) {
  detail::require_nodes(g, 3);
  auto idx = detail::path_indices(g, true, true);
  return {IndexKind::BC, std::move(idx.bc), {}, {}};
}

inline CentralityVector closeness_centrality(const Topology& g) {
  detail::require_nodes(g, 2);
  auto idx = detail::path_indices(g, false, false);
  return {IndexKind::CC, std::move(idx.cc), {}, {}};
}

inline CentralityVector harmonic_centrality(const Topology& g) {
  detail::require_nodes(g, 2);
  auto idx = detail::path_indices(g, false, true);
  return {IndexKind::HC, std::move(idx.hc), {}, {}};
}

inline CentralityVector eccentricity_centrality(const Topology& g) {
  detail::require_nodes(g, 2);
  auto idx = detail::path_indices(g, false, false);
  return {IndexKind::ECC, std::move(idx.ecc), {}, {}};
}

struct PowerIterationOptions {
  double tolerance = 1e-10;  // infinity-norm change between iterates
  std::size_t max_iterations = 100000;
};

/// Dominant eigenvector of the (capacity-weighted) adjacency matrix, unit
/// Euclidean norm, all entries non-negative.
///
/// Iterates x <- (A + sI) x / |(A + sI) x| with s the mean weighted degree.
/// The shift leaves the eigenvectors unchanged and keeps the iteration from
/// oscillating on bipartite graphs, where -lambda is also an eigenvalue of A.
inline CentralityVector eigenvector_centrality(const Topology& g, PowerIterationOptions opt = {}) {
  detail::require_nodes(g, 2);
  if (!is_connected(g)) throw ComputeError("eigenvector centrality requires a connected graph");
  const std::size_t n = g.size();

  double shift = 0.0;
  for (NodeId u = 0; u < n; ++u) shift += g.weighted_degree(u);
  shift /= static_cast<double>(n);

  auto multiply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (NodeId u = 0; u < n; ++u) {
      double acc = 0.0;
      for (const auto& nb : g.neighbors(u)) acc += nb.capacity * x[nb.node];
      y[u] = acc;
    }
  };

  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n);
  double delta = kInfinity;
  std::size_t iter = 0;
  for (; iter < opt.max_iterations; ++iter) {
    multiply(x, y);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += shift * x[i];
      norm += y[i] * y[i];
    }
    norm = std::sqrt(norm);
    delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= norm;
      delta = std::max(delta, std::abs(y[i] - x[i]));
    }
    x.swap(y);
    if (delta < opt.tolerance) break;
  }

  multiply(x, y);
  double lambda = 0.0;
  for (std::size_t i = 0; i < n; ++i) lambda += x[i] * y[i];
  if (iter == opt.max_iterations) {
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(y[i] - lambda * x[i]));
    throw ComputeError("eigenvector centrality did not converge (residual " +
                       std::to_string(residual) + ")");
  }
  return {IndexKind::EC, std::move(x), {}, lambda};
}

struct PageRankOptions {
  double tolerance = 1e-12;  // L1 change between iterates
  std::size_t max_iterations = 100000;
};

/// PageRank on the undirected binary topology: each node spreads its score
/// evenly over its neighbors. Isolated nodes (only present in residual graphs
/// of sequential attacks) spread theirs uniformly over all nodes.
inline CentralityVector pagerank(const Topology& g, double damping = kDefaultDamping,
                                 PageRankOptions opt = {}) {
  if (!(damping >= 0.0 && damping < 1.0)) throw ComputeError("damping factor must lie in [0, 1)");
  if (g.capacitated()) throw ComputeError("weighted PageRank out of scope");
  detail::require_nodes(g, 1);
  const std::size_t n = g.size();
  const double base = (1.0 - damping) / static_cast<double>(n);

  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> share(n), next(n);
  std::size_t iter = 0;
  for (; iter < opt.max_iterations; ++iter) {
    double dangling = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      const auto deg = g.degree(u);
      share[u] = deg ? x[u] / static_cast<double>(deg) : 0.0;
      if (!deg) dangling += x[u];
    }
    const double spread = base + damping * dangling / static_cast<double>(n);
    double delta = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      double acc = 0.0;
      for (const auto& nb : g.neighbors(u)) acc += share[nb.node];
      next[u] = spread + damping * acc;
      delta += std::abs(next[u] - x[u]);
    }
    x.swap(next);
    if (delta < opt.tolerance) break;
  }
  if (iter == opt.max_iterations) throw ComputeError("PageRank did not converge");
  return {IndexKind::PG, std::move(x), damping, {}};
}

inline CentralityVector compute_index(const Topology& g, IndexKind kind, double damping = kDefaultDamping) {
  switch (kind) {
    case IndexKind::DC: return degree_centrality(g);
    case IndexKind::BC: return betweenness_centrality(g);
    case IndexKind::CC: return closeness_centrality(g);
    case IndexKind::HC: return harmonic_centrality(g);
    case IndexKind::ECC: return eccentricity_centrality(g);
    case IndexKind::EC: return eigenvector_centrality(g);
    case IndexKind::PG: return pagerank(g, damping);
  }
  throw ComputeError("unknown index kind");
}

/// Every index defined on `g`: all seven on binary graphs, PG dropped on
/// capacitated ones.
inline std::set<IndexKind> applicable_kinds(const Topology& g) {
  std::set<IndexKind> kinds(kAllIndexKinds.begin(), kAllIndexKinds.end());
  if (g.capacitated()) kinds.erase(IndexKind::PG);
  return kinds;
}

/// Computes the requested indices, sharing a single all-sources sweep among
/// BC, CC, HC and ECC.
inline std::map<IndexKind, CentralityVector> compute_all(const Topology& g,
                                                         const std::set<IndexKind>& kinds,
                                                         double damping = kDefaultDamping) {
  std::map<IndexKind, CentralityVector> out;
  if (kinds.empty()) return out;
  if (kinds.count(IndexKind::PG) && g.capacitated()) throw ComputeError("weighted PageRank out of scope");

  const bool bc = kinds.count(IndexKind::BC) > 0;
  const bool needs_connected = kinds.count(IndexKind::CC) || kinds.count(IndexKind::ECC);
  if (bc || needs_connected || kinds.count(IndexKind::HC)) {
    detail::require_nodes(g, bc ? 3 : 2);
    auto idx = detail::path_indices(g, bc, !needs_connected);
    if (bc) out[IndexKind::BC] = {IndexKind::BC, std::move(idx.bc), {}, {}};
    if (kinds.count(IndexKind::CC)) out[IndexKind::CC] = {IndexKind::CC, std::move(idx.cc), {}, {}};
    if (kinds.count(IndexKind::HC)) out[IndexKind::HC] = {IndexKind::HC, std::move(idx.hc), {}, {}};
    if (kinds.count(IndexKind::ECC)) out[IndexKind::ECC] = {IndexKind::ECC, std::move(idx.ecc), {}, {}};
  }
  if (kinds.count(IndexKind::DC)) out[IndexKind::DC] = degree_centrality(g);
  if (kinds.count(IndexKind::EC)) out[IndexKind::EC] = eigenvector_centrality(g);
  if (kinds.count(IndexKind::PG)) out[IndexKind::PG] = pagerank(g, damping);
  return out;
}

inline GraphCentralitySummary graph_summary(const CentralityVector& c) {
  GraphCentralitySummary s;
  if (c.scores.empty()) return s;
  const auto [lo, hi] = std::minmax_element(c.scores.begin(), c.scores.end());
  s.unipolarity = *hi;
  for (double v : c.scores) {
    s.integration += v;
    s.centralization += v - *lo;
  }
  return s;
}

/// Degree -> number of nodes with that (unweighted) degree.
inline std::map<std::size_t, std::size_t> degree_distribution(const Topology& g) {
  std::map<std::size_t, std::size_t> hist;
  for (NodeId u = 0; u < g.size(); ++u) ++hist[g.degree(u)];
  return hist;
}

}  // namespace toposcope
