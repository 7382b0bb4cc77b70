#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "toposcope/centrality.hpp"
#include "toposcope/error.hpp"
#include "toposcope/graph.hpp"
#include "toposcope/paths.hpp"
#include "toposcope/rankstats.hpp"

namespace toposcope {

enum class AttackMode { simultaneous, sequential };

inline std::string_view to_string(AttackMode m) {
  return m == AttackMode::simultaneous ? "simultaneous" : "sequential";
}

/// Removal counts 0, 1, ..., ceil(max_fraction * n), capped at n - 1.
inline std::vector<std::size_t> default_steps(std::size_t n, double max_fraction = 0.05) {
  if (n == 0) return {};
  const auto top = std::min<std::size_t>(
      static_cast<std::size_t>(std::ceil(max_fraction * static_cast<double>(n))), n - 1);
  std::vector<std::size_t> steps(top + 1);
  for (std::size_t k = 0; k <= top; ++k) steps[k] = k;
  return steps;
}

struct AttackPlan {
  IndexKind driver = IndexKind::DC;
  AttackMode mode = AttackMode::simultaneous;
  std::vector<std::size_t> steps;

  void validate(std::size_t n) const {
    if (steps.empty() || steps.front() != 0) throw ComputeError("attack steps must start at 0");
    for (std::size_t i = 1; i < steps.size(); ++i)
      if (steps[i] <= steps[i - 1]) throw ComputeError("attack steps must be strictly increasing");
    if (steps.back() + 1 > n) throw ComputeError("attack steps exceed N - 1");
  }
};

struct ConnectivitySnapshot {
  std::size_t k = 0;
  std::size_t gcc_size = 0;
  std::size_t num_components = 0;
  double avg_shortest_path = 0.0;
  bool no_pairs = false;  // no component with two or more nodes
};

struct AttackTrace {
  IndexKind driver = IndexKind::DC;
  AttackMode mode = AttackMode::simultaneous;
  std::vector<ConnectivitySnapshot> snapshots;
  std::vector<NodeId> removal_order;  // removal_order[i] is the (i+1)-th node removed
};

/// Nodes of g that are not in `removed`, ascending.
inline std::vector<NodeId> survivors(std::size_t n, std::span<const NodeId> removed) {
  std::vector<char> gone(n, 0);
  for (NodeId u : removed) {
    if (u >= n) throw ComputeError("removed node out of range");
    gone[u] = 1;
  }
  std::vector<NodeId> keep;
  keep.reserve(n);
  for (NodeId u = 0; u < n; ++u)
    if (!gone[u]) keep.push_back(u);
  return keep;
}

/// Connectivity of the graph left after deleting `removed`. Path lengths are
/// hop counts averaged over ordered pairs of distinct nodes that share a
/// component.
inline ConnectivitySnapshot connectivity_metrics(const Topology& g, std::span<const NodeId> removed) {
  const auto keep = survivors(g.size(), removed);
  if (keep.empty()) throw ComputeError("empty residual graph");
  const Topology residual = g.induced(keep);
  const auto cc = connected_components(residual);

  ConnectivitySnapshot s;
  s.k = g.size() - keep.size();
  s.gcc_size = cc.gcc_size();
  s.num_components = cc.count();

  double total = 0.0;
  double pairs = 0.0;
  for (NodeId u = 0; u < residual.size(); ++u) {
    if (cc.component_sizes[cc.component_id[u]] < 2) continue;
    const auto sweep = bfs_sweep(residual, u);
    for (std::size_t i = 1; i < sweep.order.size(); ++i) total += sweep.row.dist[sweep.order[i]];
    pairs += static_cast<double>(sweep.order.size() - 1);
  }
  s.no_pairs = pairs == 0.0;
  s.avg_shortest_path = s.no_pairs ? 0.0 : total / pairs;
  return s;
}

/// Scores of `kind` on a residual graph that may be disconnected. CC and ECC
/// are taken inside each node's component, EC on the giant component only
/// (other nodes score 0), and the remaining indices on the whole graph.
inline std::vector<double> score_residual(const Topology& g, IndexKind kind, double damping) {
  const std::size_t n = g.size();
  if (n == 0) return {};
  switch (kind) {
    case IndexKind::DC: {
      std::vector<double> s(n, 0.0);
      if (n < 2) return s;
      for (NodeId u = 0; u < n; ++u) s[u] = g.weighted_degree(u) / static_cast<double>(n - 1);
      return s;
    }
    case IndexKind::BC: return detail::path_indices(g, true, true).bc;
    case IndexKind::CC: return detail::path_indices(g, false, true).cc;
    case IndexKind::HC: return detail::path_indices(g, false, true).hc;
    case IndexKind::ECC: return detail::path_indices(g, false, true).ecc;
    case IndexKind::EC: {
      std::vector<double> s(n, 0.0);
      const auto cc = connected_components(g);
      const auto members = component_members(cc, cc.gcc_id);
      if (members.size() < 2) {
        s[members.front()] = 1.0;
        return s;
      }
      const auto local = eigenvector_centrality(g.induced(members));
      for (std::size_t i = 0; i < members.size(); ++i) s[members[i]] = local.scores[i];
      return s;
    }
    case IndexKind::PG: return pagerank(g, damping).scores;
  }
  throw ComputeError("unknown index kind");
}

/// The first `count` nodes removed by an attack driven by `driver`.
///
/// Simultaneous: the top of the intact-graph ranking. Sequential: the current
/// top node, re-ranking the residual graph after every removal. Ties go to
/// the smaller original id in both modes.
inline std::vector<NodeId> removal_sequence(const Topology& g, IndexKind driver, AttackMode mode,
                                            std::size_t count, double damping = kDefaultDamping) {
  if (driver == IndexKind::PG && g.capacitated()) throw ComputeError("weighted PageRank out of scope");
  if (count > g.size()) throw ComputeError("cannot remove more nodes than the graph has");
  std::vector<NodeId> removed;
  removed.reserve(count);
  if (count == 0) return removed;

  if (mode == AttackMode::simultaneous) {
    const Ranking r = rank(compute_index(g, driver, damping));
    removed.assign(r.order.begin(), r.order.begin() + static_cast<std::ptrdiff_t>(count));
    return removed;
  }

  std::vector<NodeId> alive(g.size());
  std::iota(alive.begin(), alive.end(), NodeId{0});
  while (removed.size() < count) {
    const Topology residual = g.induced(alive);
    const auto scores = score_residual(residual, driver, damping);
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i)
      if (scores[i] > scores[best] && !same_score(scores[i], scores[best])) best = i;
    removed.push_back(alive[best]);
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return removed;
}

inline AttackTrace run_attack(const Topology& g, const AttackPlan& plan, double damping = kDefaultDamping) {
  plan.validate(g.size());
  AttackTrace trace;
  trace.driver = plan.driver;
  trace.mode = plan.mode;
  trace.removal_order = removal_sequence(g, plan.driver, plan.mode, plan.steps.back(), damping);
  for (std::size_t k : plan.steps)
    trace.snapshots.push_back(
        connectivity_metrics(g, std::span<const NodeId>(trace.removal_order.data(), k)));
  return trace;
}

enum class Metric { gcc_size, num_components, avg_shortest_path, agg_max_flow };

inline std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::gcc_size: return "gcc_size";
    case Metric::num_components: return "num_components";
    case Metric::avg_shortest_path: return "avg_shortest_path";
    case Metric::agg_max_flow: return "agg_max_flow";
  }
  return "?";
}

/// Whether the most damaging ("best-case") attack minimizes the metric.
/// Average path length is non-monotone under attack; its best case is taken
/// as the pointwise maximum.
inline bool best_case_is_min(Metric m) {
  return m == Metric::gcc_size || m == Metric::agg_max_flow;
}

/// One metric's values over the removal steps of one driver.
struct MetricSeries {
  IndexKind driver = IndexKind::DC;
  AttackMode mode = AttackMode::simultaneous;
  std::vector<std::size_t> steps;
  std::vector<double> values;
};

inline MetricSeries series_of(const AttackTrace& t, Metric m) {
  if (m == Metric::agg_max_flow) throw ComputeError("connectivity traces carry no flow values");
  MetricSeries s{t.driver, t.mode, {}, {}};
  for (const auto& snap : t.snapshots) {
    s.steps.push_back(snap.k);
    switch (m) {
      case Metric::gcc_size: s.values.push_back(static_cast<double>(snap.gcc_size)); break;
      case Metric::num_components: s.values.push_back(static_cast<double>(snap.num_components)); break;
      default: s.values.push_back(snap.avg_shortest_path); break;
    }
  }
  return s;
}

struct EnvelopeReport {
  Metric metric = Metric::gcc_size;
  AttackMode mode = AttackMode::simultaneous;
  std::vector<std::size_t> steps;
  std::vector<IndexKind> drivers;
  std::vector<std::vector<double>> values;  // [driver][step]
  std::vector<double> best;                 // m_bc(k)
  std::vector<double> worst;                // m_wc(k)
  std::vector<double> max_min_ratio;        // max / min over drivers
  std::vector<std::vector<double>> step_impact;  // IF(k; c), NaN where the envelope is flat

  bool flat_at(std::size_t step) const { return best[step] == worst[step]; }
  /// True when no step k > 0 has a non-zero envelope width.
  bool degenerate() const {
    for (std::size_t i = 0; i < steps.size(); ++i)
      if (steps[i] != 0 && !flat_at(i)) return false;
    return true;
  }
};

inline EnvelopeReport envelope(std::span<const MetricSeries> series, Metric metric) {
  if (series.size() < 2) throw ComputeError("an envelope needs at least two traces");
  EnvelopeReport r;
  r.metric = metric;
  r.mode = series.front().mode;
  r.steps = series.front().steps;
  for (const auto& s : series) {
    if (s.steps != r.steps || s.values.size() != r.steps.size())
      throw ComputeError("traces have mismatched removal steps");
    if (s.mode != r.mode) throw ComputeError("traces mix removal modes");
    r.drivers.push_back(s.driver);
    r.values.push_back(s.values);
  }
  const bool min_is_best = best_case_is_min(metric);
  const std::size_t steps = r.steps.size();
  for (std::size_t i = 0; i < steps; ++i) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& v : r.values) {
      lo = std::min(lo, v[i]);
      hi = std::max(hi, v[i]);
    }
    r.best.push_back(min_is_best ? lo : hi);
    r.worst.push_back(min_is_best ? hi : lo);
    if (lo == 0.0)
      r.max_min_ratio.push_back(hi == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
    else
      r.max_min_ratio.push_back(hi / lo);
  }
  for (const auto& v : r.values) {
    auto& row = r.step_impact.emplace_back();
    for (std::size_t i = 0; i < steps; ++i) {
      if (r.flat_at(i)) {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
      } else {
        row.push_back(std::abs(v[i] - r.worst[i]) / std::abs(r.best[i] - r.worst[i]));
      }
    }
  }
  return r;
}

inline EnvelopeReport envelope(std::span<const AttackTrace> traces, Metric metric) {
  std::vector<MetricSeries> series;
  for (const auto& t : traces) series.push_back(series_of(t, metric));
  return envelope(std::span<const MetricSeries>(series), metric);
}

/// Mean of IF(k; c) over the steps k > 0 where the envelope has non-zero width.
inline double impact_factor(const EnvelopeReport& r, IndexKind c) {
  const auto it = std::find(r.drivers.begin(), r.drivers.end(), c);
  if (it == r.drivers.end()) throw ComputeError("index not part of the envelope");
  const auto& row = r.step_impact[static_cast<std::size_t>(it - r.drivers.begin())];
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    if (r.steps[i] == 0 || r.flat_at(i)) continue;
    sum += row[i];
    ++used;
  }
  if (used == 0) throw ComputeError("flat envelope");
  return sum / static_cast<double>(used);
}

/// Empirical PMF of IF(c) over topologies on `bins` equal-width bins of
/// [0, 1]; reports with a flat envelope are skipped.
inline std::vector<double> if_pmf(std::span<const EnvelopeReport> reports, IndexKind c, std::size_t bins) {
  if (bins == 0) throw ComputeError("at least one bin required");
  std::vector<double> mass(bins, 0.0);
  std::size_t used = 0;
  for (const auto& r : reports) {
    if (r.degenerate()) continue;
    const double value = impact_factor(r, c);
    auto bin = static_cast<std::size_t>(std::floor(value * static_cast<double>(bins)));
    mass[std::min(bin, bins - 1)] += 1.0;
    ++used;
  }
  if (used == 0) throw ComputeError("no non-degenerate envelope");
  for (auto& m : mass) m /= static_cast<double>(used);
  return mass;
}

}  // namespace toposcope
