#pragma once

// CSV / JSON / plot-data writers shared by the CLI subcommands.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "toposcope/toposcope.hpp"

namespace toposcope::report {

using json = nlohmann::ordered_json;

/// Fixed 12-significant-digit rendering used in every CSV and data file.
inline std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// JSON has no inf/nan; those become null.
inline json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << content;
}

inline void write_json(const std::filesystem::path& path, const json& j) {
  write_file(path, j.dump(2) + "\n");
}

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) { row(header); }

  Csv& row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text_ += ',';
      text_ += quote(cells[i]);
    }
    text_ += '\n';
    return *this;
  }
  const std::string& str() const { return text_; }

 private:
  static std::string quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string q = "\"";
    for (char c : cell) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  }
  std::string text_;
};

inline json to_json(const IngestReport& r) {
  return {{"nodes_read", r.nodes_read},
          {"edges_read", r.edges_read},
          {"multi_edges_collapsed", r.multi_edges_collapsed},
          {"self_loops_dropped", r.self_loops_dropped},
          {"nodes_outside_gcc", r.nodes_outside_gcc},
          {"capacity_defaults_applied", r.capacity_defaults_applied}};
}

inline std::string scores_csv(const Topology& g, const CentralityVector& c) {
  Csv csv({"node", "score"});
  for (NodeId u = 0; u < g.size(); ++u) csv.row({g.label(u), num(c.scores[u])});
  return csv.str();
}

inline std::string degree_distribution_dat(const Topology& g) {
  std::string out = "# degree count\n";
  for (auto [deg, count] : degree_distribution(g)) out += std::to_string(deg) + ' ' + std::to_string(count) + '\n';
  return out;
}

inline std::string matrix_csv(const std::vector<IndexKind>& kinds, const PairMatrix& m) {
  std::vector<std::string> header{"index"};
  for (auto k : kinds) header.emplace_back(to_string(k));
  Csv csv(header);
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    std::vector<std::string> row{std::string(to_string(kinds[i]))};
    for (std::size_t j = 0; j < kinds.size(); ++j) row.push_back(num(m.at(i, j)));
    csv.row(row);
  }
  return csv.str();
}

inline json matrix_json(const std::vector<IndexKind>& kinds, const PairMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < kinds.size(); ++j) row.push_back(jnum(m.at(i, j)));
    rows.push_back(row);
  }
  json degenerate = json::array();
  for (std::size_t i = 0; i < kinds.size(); ++i)
    for (std::size_t j = i + 1; j < kinds.size(); ++j)
      if (m.is_degenerate(i, j))
        degenerate.push_back({std::string(to_string(kinds[i])), std::string(to_string(kinds[j]))});
  return {{"values", rows}, {"degenerate_pairs", degenerate}};
}

/// Row/column order of the dataset-average tables.
inline std::vector<std::size_t> table_order(const std::vector<IndexKind>& kinds) {
  static constexpr IndexKind kOrder[] = {IndexKind::BC, IndexKind::CC, IndexKind::DC, IndexKind::EC,
                                         IndexKind::HC, IndexKind::ECC, IndexKind::PG};
  std::vector<std::size_t> order;
  for (auto k : kOrder)
    for (std::size_t i = 0; i < kinds.size(); ++i)
      if (kinds[i] == k) order.push_back(i);
  return order;
}

/// Lower-triangular "mean±variance" table, unit diagonal, two decimals.
inline std::string aggregate_table(const AggregateMatrix& agg) {
  const auto order = table_order(agg.kinds);
  std::string out = "|";
  for (std::size_t c : order) out += "\t" + std::string(to_string(agg.kinds[c]));
  out += '\n';
  char buf[64];
  for (std::size_t ri = 0; ri < order.size(); ++ri) {
    out += to_string(agg.kinds[order[ri]]);
    for (std::size_t ci = 0; ci < order.size(); ++ci) {
      out += '\t';
      if (ci > ri) continue;
      if (ci == ri) {
        out += "1";
        continue;
      }
      const auto& cell = agg.at(order[ri], order[ci]);
      if (cell.samples == 0) {
        out += "-";
      } else {
        std::snprintf(buf, sizeof buf, "%.2f±%.2f", cell.mean, cell.variance);
        out += buf;
      }
    }
    out += '\n';
  }
  return out;
}

inline std::string aggregate_csv(const AggregateMatrix& agg) {
  Csv csv({"row", "column", "mean", "variance", "samples"});
  const auto order = table_order(agg.kinds);
  for (std::size_t ri = 0; ri < order.size(); ++ri)
    for (std::size_t ci = 0; ci <= ri; ++ci) {
      const auto& cell = agg.at(order[ri], order[ci]);
      csv.row({std::string(to_string(agg.kinds[order[ri]])), std::string(to_string(agg.kinds[order[ci]])),
               num(cell.mean), num(cell.variance), std::to_string(cell.samples)});
    }
  return csv.str();
}

inline std::string trace_csv(const Topology& g, const AttackTrace& t) {
  Csv csv({"k", "removed_node", "gcc_size", "num_components", "avg_shortest_path"});
  for (const auto& s : t.snapshots)
    csv.row({std::to_string(s.k), s.k ? g.label(t.removal_order[s.k - 1]) : std::string("-"),
             std::to_string(s.gcc_size), std::to_string(s.num_components), num(s.avg_shortest_path)});
  return csv.str();
}

inline std::string capacity_csv(const Topology& g, const CapacityTrace& t) {
  Csv csv({"k", "removed_node", "agg_max_flow"});
  for (const auto& p : t.steps)
    csv.row({std::to_string(p.k), p.k ? g.label(t.removal_order[p.k - 1]) : std::string("-"),
             num(p.agg_max_flow)});
  return csv.str();
}

inline std::string envelope_csv(const EnvelopeReport& r) {
  std::vector<std::string> header{"k"};
  for (auto d : r.drivers) header.emplace_back(to_string(d));
  for (const char* extra : {"best_case", "worst_case", "max_min_ratio"}) header.emplace_back(extra);
  Csv csv(header);
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    std::vector<std::string> row{std::to_string(r.steps[i])};
    for (const auto& v : r.values) row.push_back(num(v[i]));
    row.push_back(num(r.best[i]));
    row.push_back(num(r.worst[i]));
    row.push_back(num(r.max_min_ratio[i]));
    csv.row(row);
  }
  return csv.str();
}

inline json envelope_json(const EnvelopeReport& r) {
  json impact = json::object();
  for (auto d : r.drivers) {
    try {
      impact[std::string(to_string(d))] = impact_factor(r, d);
    } catch (const ComputeError&) {
      impact[std::string(to_string(d))] = nullptr;
    }
  }
  return {{"metric", std::string(to_string(r.metric))},
          {"best_case_polarity", best_case_is_min(r.metric) ? "min" : "max"},
          {"degenerate", r.degenerate()},
          {"impact_factor", impact}};
}

inline std::string pmf_dat(const std::vector<double>& mass) {
  std::string out = "# bin_low bin_high mass\n";
  const double width = 1.0 / static_cast<double>(mass.size());
  for (std::size_t i = 0; i < mass.size(); ++i)
    out += num(width * static_cast<double>(i)) + ' ' + num(width * static_cast<double>(i + 1)) + ' ' +
           num(mass[i]) + '\n';
  return out;
}

}  // namespace toposcope::report
