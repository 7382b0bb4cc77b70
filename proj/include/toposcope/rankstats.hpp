#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <vector>

#include "toposcope/centrality.hpp"
#include "toposcope/error.hpp"
#include "toposcope/graph.hpp"

namespace toposcope {

/// Two scores closer than this (relative) count as tied. Mathematically
/// equal scores reached through different floating-point paths would
/// otherwise get distinct ranks, and rankings would change under uniform
/// capacity scaling.
inline constexpr double kScoreTieTolerance = 1e-9;

inline bool same_score(double a, double b) {
  return a == b || std::abs(a - b) <= kScoreTieTolerance * std::max(std::abs(a), std::abs(b));
}

/// Nodes ordered by decreasing score (ties by ascending id) together with the
/// fractional rank of every node: rank 1 is the highest score and tied
/// scores share the mean of the positions they occupy.
struct Ranking {
  std::vector<NodeId> order;
  std::vector<double> frac_rank;

  std::size_t size() const { return order.size(); }
  bool all_tied() const {
    return std::adjacent_find(frac_rank.begin(), frac_rank.end(), std::not_equal_to<>()) ==
           frac_rank.end();
  }
};

inline Ranking rank(std::span<const double> scores) {
  const std::size_t n = scores.size();
  for (double v : scores)
    if (std::isnan(v)) throw ComputeError("cannot rank NaN scores");
  Ranking r;
  r.order.resize(n);
  std::iota(r.order.begin(), r.order.end(), NodeId{0});
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](NodeId a, NodeId b) { return scores[a] > scores[b]; });
  r.frac_rank.assign(n, 0.0);
  for (std::size_t i = 0; i < n;) {
    // a tie group is anchored at its largest score
    std::size_t j = i + 1;
    while (j < n && same_score(scores[r.order[j]], scores[r.order[i]])) ++j;
    std::sort(r.order.begin() + static_cast<std::ptrdiff_t>(i), r.order.begin() + static_cast<std::ptrdiff_t>(j));
    // positions i+1 .. j share their mean
    const double shared = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t p = i; p < j; ++p) r.frac_rank[r.order[p]] = shared;
    i = j;
  }
  return r;
}

inline Ranking rank(const CentralityVector& c) { return rank(std::span<const double>(c.scores)); }

/// A correlation value. `degenerate` marks inputs where the coefficient is
/// undefined (a constant ranking); the value is then reported as 0.
struct Coefficient {
  double value = 0.0;
  bool degenerate = false;
};

namespace detail {
inline void require_pair(std::size_t a, std::size_t b) {
  if (a != b) throw ComputeError("rankings cover different node sets");
  if (a < 2) throw ComputeError("at least two nodes required");
}
}  // namespace detail

/// 1 - 6 sum(d^2) / (N (N^2 - 1)) over fractional ranks.
inline Coefficient spearman(const Ranking& r1, const Ranking& r2) {
  detail::require_pair(r1.size(), r2.size());
  if (r1.all_tied() || r2.all_tied()) return {0.0, true};
  const auto n = static_cast<double>(r1.size());
  double sum_sq = 0.0;
  for (std::size_t u = 0; u < r1.size(); ++u) {
    const double d = r1.frac_rank[u] - r2.frac_rank[u];
    sum_sq += d * d;
  }
  return {1.0 - 6.0 * sum_sq / (n * (n * n - 1.0)), false};
}

/// Kendall tau-b, O(N log N) (Knight's merge-sort count).
inline Coefficient kendall(const Ranking& r1, const Ranking& r2) {
  detail::require_pair(r1.size(), r2.size());
  const std::size_t n = r1.size();
  const auto& x = r1.frac_rank;
  const auto& y = r2.frac_rank;

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
  });

  auto tie_pairs = [](std::uint64_t run) { return run * (run - 1) / 2; };
  std::uint64_t ties_x = 0, ties_xy = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && x[idx[j]] == x[idx[i]]) ++j;
    ties_x += tie_pairs(j - i);
    for (std::size_t a = i; a < j;) {
      std::size_t b = a + 1;
      while (b < j && y[idx[b]] == y[idx[a]]) ++b;
      ties_xy += tie_pairs(b - a);
      a = b;
    }
    i = j;
  }

  // Bottom-up merge sort on y, counting strict inversions.
  std::uint64_t swaps = 0;
  std::vector<std::size_t> buf(n);
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, n), hi = std::min(lo + 2 * width, n);
      std::size_t a = lo, b = mid, out = lo;
      while (a < mid && b < hi) {
        if (y[idx[b]] < y[idx[a]]) {
          swaps += mid - a;
          buf[out++] = idx[b++];
        } else {
          buf[out++] = idx[a++];
        }
      }
      while (a < mid) buf[out++] = idx[a++];
      while (b < hi) buf[out++] = idx[b++];
    }
    idx.swap(buf);
  }

  std::uint64_t ties_y = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && y[idx[j]] == y[idx[i]]) ++j;
    ties_y += tie_pairs(j - i);
    i = j;
  }

  const std::uint64_t total = tie_pairs(n);
  if (total == ties_x || total == ties_y) return {0.0, true};
  const double numer = static_cast<double>(total) - static_cast<double>(ties_x) -
                       static_cast<double>(ties_y) + static_cast<double>(ties_xy) -
                       2.0 * static_cast<double>(swaps);
  const double denom = std::sqrt(static_cast<double>(total - ties_x) * static_cast<double>(total - ties_y));
  return {numer / denom, false};
}

/// Linear (Pearson) correlation of two raw score vectors.
inline double pearson(std::span<const double> a, std::span<const double> b) {
  detail::require_pair(a.size(), b.size());
  const auto n = static_cast<double>(a.size());
  const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a, db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) throw ComputeError("degenerate: constant scores");
  return std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
}

inline double pearson(const CentralityVector& c1, const CentralityVector& c2) {
  return pearson(std::span<const double>(c1.scores), std::span<const double>(c2.scores));
}

inline std::size_t top_k_count(std::size_t n, double k_fraction) {
  const auto k = static_cast<std::size_t>(std::floor(k_fraction * static_cast<double>(n)));
  return std::max<std::size_t>(1, std::min(k, n));
}

/// Percentage of nodes shared by the two top-k sets, k = max(1, floor(k_fraction N)).
inline double top_k_overlap(const Ranking& r1, const Ranking& r2, double k_fraction) {
  if (!(k_fraction > 0.0 && k_fraction <= 1.0)) throw ComputeError("k fraction must lie in (0, 1]");
  if (r1.size() != r2.size()) throw ComputeError("rankings cover different node sets");
  if (r1.size() == 0) throw ComputeError("empty ranking");
  const std::size_t k = top_k_count(r1.size(), k_fraction);
  std::vector<char> in_first(r1.size(), 0);
  for (std::size_t i = 0; i < k; ++i) in_first[r1.order[i]] = 1;
  std::size_t common = 0;
  for (std::size_t i = 0; i < k; ++i) common += in_first[r2.order[i]];
  return 100.0 * static_cast<double>(common) / static_cast<double>(k);
}

/// Symmetric square matrix indexed like CorrelationMatrix::kinds.
struct PairMatrix {
  std::size_t dim = 0;
  std::vector<double> cells;
  std::vector<char> degenerate;

  explicit PairMatrix(std::size_t d = 0) : dim(d), cells(d * d, 0.0), degenerate(d * d, 0) {}
  double& at(std::size_t i, std::size_t j) { return cells[i * dim + j]; }
  double at(std::size_t i, std::size_t j) const { return cells[i * dim + j]; }
  void set(std::size_t i, std::size_t j, double v, bool flag = false) {
    at(i, j) = at(j, i) = v;
    degenerate[i * dim + j] = degenerate[j * dim + i] = flag;
  }
  bool is_degenerate(std::size_t i, std::size_t j) const { return degenerate[i * dim + j] != 0; }
};

struct CorrelationMatrix {
  std::vector<IndexKind> kinds;
  PairMatrix spearman, kendall, pearson, overlap;
  double k_fraction = 0.05;
};

inline CorrelationMatrix correlation_matrix(const std::map<IndexKind, CentralityVector>& vectors,
                                            double k_fraction) {
  if (vectors.size() < 2) throw ComputeError("correlation needs at least two index vectors");
  const std::size_t n = vectors.begin()->second.size();
  for (const auto& [kind, v] : vectors)
    if (v.size() != n) throw ComputeError("index vectors cover different node sets");

  CorrelationMatrix m;
  m.k_fraction = k_fraction;
  std::vector<Ranking> ranks;
  for (const auto& [kind, v] : vectors) {
    m.kinds.push_back(kind);
    ranks.push_back(rank(v));
  }
  const std::size_t dim = m.kinds.size();
  m.spearman = m.kendall = m.pearson = m.overlap = PairMatrix(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      if (i == j) {
        m.spearman.set(i, i, 1.0);
        m.kendall.set(i, i, 1.0);
        m.pearson.set(i, i, 1.0);
        m.overlap.set(i, i, 100.0);
        continue;
      }
      const auto rho = spearman(ranks[i], ranks[j]);
      const auto tau = kendall(ranks[i], ranks[j]);
      m.spearman.set(i, j, rho.value, rho.degenerate);
      m.kendall.set(i, j, tau.value, tau.degenerate);
      try {
        m.pearson.set(i, j, pearson(vectors.at(m.kinds[i]), vectors.at(m.kinds[j])));
      } catch (const ComputeError&) {
        m.pearson.set(i, j, 0.0, true);
      }
      m.overlap.set(i, j, top_k_overlap(ranks[i], ranks[j], k_fraction));
    }
  }
  return m;
}

struct CellStats {
  double mean = 0.0;
  double variance = 0.0;  // population variance over topologies
  std::size_t samples = 0;
};

/// Per-cell mean and variance of one measure across several topologies.
/// Rows and columns cover every index seen in any topology; a cell draws on
/// the topologies that computed both of its indices. Degenerate cells are
/// left out of their cell's statistics.
struct AggregateMatrix {
  std::vector<IndexKind> kinds;
  std::vector<CellStats> cells;  // row-major, kinds.size()^2

  const CellStats& at(std::size_t i, std::size_t j) const { return cells[i * kinds.size() + j]; }
};

inline AggregateMatrix aggregate(std::span<const CorrelationMatrix> per_topology,
                                 PairMatrix CorrelationMatrix::*measure) {
  if (per_topology.empty()) throw ComputeError("nothing to aggregate");
  std::set<IndexKind> all;
  for (const auto& m : per_topology) all.insert(m.kinds.begin(), m.kinds.end());
  AggregateMatrix out;
  out.kinds.assign(all.begin(), all.end());
  const std::size_t dim = out.kinds.size();
  // local[t][i]: position of out.kinds[i] in topology t, or dim if absent
  std::vector<std::vector<std::size_t>> local;
  for (const auto& m : per_topology) {
    auto& pos = local.emplace_back(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const auto it = std::find(m.kinds.begin(), m.kinds.end(), out.kinds[i]);
      if (it != m.kinds.end()) pos[i] = static_cast<std::size_t>(it - m.kinds.begin());
    }
  }
  out.cells.resize(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      std::vector<double> xs;
      for (std::size_t t = 0; t < per_topology.size(); ++t) {
        const std::size_t a = local[t][i], b = local[t][j];
        if (a == dim || b == dim) continue;
        const auto& pm = per_topology[t].*measure;
        if (!pm.is_degenerate(a, b)) xs.push_back(pm.at(a, b));
      }
      CellStats& s = out.cells[i * dim + j];
      s.samples = xs.size();
      if (xs.empty()) continue;
      s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
      for (double x : xs) s.variance += (x - s.mean) * (x - s.mean);
      s.variance /= static_cast<double>(xs.size());
    }
  }
  return out;
}

struct DampingSweep {
  std::vector<double> d_values;
  std::vector<IndexKind> against;
  std::vector<std::vector<Coefficient>> rho;  // [d][against]
  std::vector<char> row_degenerate;           // PG constant at that d
};

/// Spearman correlation of PageRank against other indices as the damping
/// factor varies.
inline DampingSweep damping_sweep(const Topology& g, std::span<const double> d_values,
                                  const std::set<IndexKind>& against) {
  if (g.capacitated()) throw ComputeError("weighted PageRank out of scope");
  DampingSweep out;
  out.d_values.assign(d_values.begin(), d_values.end());
  std::set<IndexKind> others = against;
  others.erase(IndexKind::PG);
  const auto vectors = compute_all(g, others);
  std::vector<Ranking> ranks;
  for (const auto& [kind, v] : vectors) {
    out.against.push_back(kind);
    ranks.push_back(rank(v));
  }
  for (double d : d_values) {
    const Ranking pg = rank(pagerank(g, d));
    auto& row = out.rho.emplace_back();
    for (const auto& r : ranks) row.push_back(spearman(pg, r));
    out.row_degenerate.push_back(pg.all_tied());
  }
  return out;
}

struct BottomRankDiagnostics {
  double fraction_dc_eq_1 = 0.0;  // share of nodes with degree one
  Coefficient spearman;           // DC vs BC
  double top_k_overlap = 0.0;     // DC vs BC, percent
};

inline BottomRankDiagnostics bottom_rank_diagnostics(const Topology& g, const Ranking& r_dc,
                                                     const Ranking& r_bc, double k_fraction = 0.05) {
  BottomRankDiagnostics out;
  std::size_t leaves = 0;
  for (NodeId u = 0; u < g.size(); ++u) leaves += g.degree(u) == 1;
  out.fraction_dc_eq_1 = g.empty() ? 0.0 : static_cast<double>(leaves) / static_cast<double>(g.size());
  out.spearman = spearman(r_dc, r_bc);
  out.top_k_overlap = top_k_overlap(r_dc, r_bc, k_fraction);
  return out;
}

}  // namespace toposcope
