#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "report.hpp"
#include "toposcope/toposcope.hpp"

namespace toposcope::cli {
namespace {

namespace fs = std::filesystem;
using report::json;
using report::num;

constexpr const char* kVersion = "1.0.0";

struct CommonOptions {
  std::vector<std::string> inputs;
  std::string output = "toposcope-out";
  std::string format = "auto";
  std::string capacity_key = "LinkSpeed";
  std::string unit_key = "LinkSpeedUnits";
  std::string range_policy = "mean";
  double default_capacity = 1.0;
  bool keep_all_components = false;
  unsigned threads = 0;
  double damping = kDefaultDamping;
  std::uint64_t seed = 0;
};

struct Input {
  std::string path;
  std::string name;  // output subdirectory
  Ingested data;
};

void add_common(CLI::App& cmd, CommonOptions& o, bool needs_input = true) {
  auto* in = cmd.add_option("-i,--input", o.inputs, "Topology files or directories of them");
  if (needs_input) in->required();
  cmd.add_option("-o,--output", o.output, "Output directory")->capture_default_str();
  cmd.add_option("--format", o.format, "Input format")
      ->check(CLI::IsMember({"auto", "edgelist", "graphml"}))
      ->capture_default_str();
  cmd.add_option("--capacity-key", o.capacity_key, "GraphML data key holding link capacity")->capture_default_str();
  cmd.add_option("--unit-key", o.unit_key, "GraphML data key holding the capacity unit")->capture_default_str();
  cmd.add_option("--range-policy", o.range_policy, "Resolution of 'lo-hi' capacities")
      ->check(CLI::IsMember({"min", "max", "mean"}))
      ->capture_default_str();
  cmd.add_option("--default-capacity", o.default_capacity, "Capacity of links without one")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_flag("--all-components", o.keep_all_components, "Keep nodes outside the giant component");
  cmd.add_option("--threads", o.threads, "Worker threads (0 = all cores; TOPOSCOPE_THREADS overrides)");
  cmd.add_option("--damping", o.damping, "PageRank damping factor")->check(CLI::Range(0.0, 0.999999))->capture_default_str();
  cmd.add_option("--seed", o.seed, "Seed recorded in the manifest")->capture_default_str();
}

IngestConfig ingest_config(const CommonOptions& o) {
  IngestConfig cfg;
  if (o.format == "edgelist") cfg.format = InputFormat::edgelist;
  if (o.format == "graphml") cfg.format = InputFormat::graphml;
  cfg.capacity_key = o.capacity_key;
  cfg.unit_key = o.unit_key;
  cfg.range_policy = o.range_policy == "min" ? RangePolicy::min
                     : o.range_policy == "max" ? RangePolicy::max
                                               : RangePolicy::mean;
  cfg.default_capacity = o.default_capacity;
  cfg.extract_gcc = !o.keep_all_components;
  return cfg;
}

bool topology_extension(const fs::path& p) {
  static const std::set<std::string> known{".txt", ".edges", ".edgelist", ".el", ".graphml", ".xml"};
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return known.count(ext) > 0;
}

std::vector<std::string> expand_inputs(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::error_code ec;
    if (fs::is_directory(item, ec)) {
      std::vector<std::string> files;
      for (const auto& entry : fs::directory_iterator(item))
        if (entry.is_regular_file() && entry.path().filename().string().front() != '.' &&
            topology_extension(entry.path()))
          files.push_back(entry.path().string());
      std::sort(files.begin(), files.end());
      if (files.empty()) throw InputError("no topology files in directory '" + item + "'");
      out.insert(out.end(), files.begin(), files.end());
    } else if (fs::exists(item, ec)) {
      out.push_back(item);
    } else {
      throw InputError("cannot open '" + item + "'");
    }
  }
  return out;
}

std::vector<Input> load_inputs(const CommonOptions& o) {
  const auto cfg = ingest_config(o);
  std::vector<Input> inputs;
  std::map<std::string, int> seen;
  for (const auto& path : expand_inputs(o.inputs)) {
    std::string name = fs::path(path).stem().string();
    if (const int n = seen[name]++; n > 0) name += "-" + std::to_string(n + 1);
    inputs.push_back({path, name, ingest_file(path, cfg)});
  }
  return inputs;
}

json manifest(const std::string& command, const CommonOptions& o, const json& extra) {
  const auto cfg = ingest_config(o);
  json m;
  m["tool"] = "toposcope";
  m["version"] = kVersion;
  m["command"] = command;
  m["inputs"] = expand_inputs(o.inputs);
  m["ingest"] = {{"format", o.format},
                 {"capacity_key", cfg.capacity_key},
                 {"unit_key", cfg.unit_key},
                 {"range_policy", o.range_policy},
                 {"default_capacity", cfg.default_capacity},
                 {"extract_gcc", cfg.extract_gcc}};
  m["damping"] = o.damping;
  m["output"] = o.output;
  m["seed"] = o.seed;
  for (const auto& [key, value] : extra.items()) m[key] = value;
  return m;
}

std::vector<IndexKind> parse_kinds(const std::string& list, bool drop_pg_from_all) {
  std::vector<IndexKind> kinds;
  if (list == "all") {
    for (auto k : kAllIndexKinds)
      if (!(drop_pg_from_all && k == IndexKind::PG)) kinds.push_back(k);
    return kinds;
  }
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto k = parse_index_kind(item);
    if (!k) throw CLI::ValidationError("unknown index '" + item + "'");
    if (std::find(kinds.begin(), kinds.end(), *k) == kinds.end()) kinds.push_back(*k);
  }
  if (kinds.empty()) throw CLI::ValidationError("no indices selected");
  return kinds;
}

json kind_names(const std::vector<IndexKind>& kinds) {
  json out = json::array();
  for (auto k : kinds) out.push_back(std::string(to_string(k)));
  return out;
}

json input_json(const Input& in) {
  return {{"path", in.path},
          {"nodes", in.data.topology.size()},
          {"edges", in.data.topology.edge_count()},
          {"capacitated", in.data.topology.capacitated()},
          {"ingest", report::to_json(in.data.report)}};
}

std::vector<double> parse_range(const std::string& list) {
  double parts[3];
  std::stringstream ss(list);
  std::string item;
  int n = 0;
  while (std::getline(ss, item, ':')) {
    if (n == 3) throw CLI::ValidationError("--sweep-damping expects start:stop:step");
    try {
      parts[n++] = std::stod(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--sweep-damping: bad number '" + item + "'");
    }
  }
  if (n != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
    throw CLI::ValidationError("--sweep-damping expects start:stop:step with step > 0");
  std::vector<double> values;
  for (long i = 0;; ++i) {
    const double d = parts[0] + static_cast<double>(i) * parts[2];
    if (d > parts[1] + 1e-9 * parts[2]) break;
    values.push_back(d);
  }
  return values;
}

// ---------------------------------------------------------------- centrality

struct CentralityOptions {
  std::string indices = "all";
  bool print_degree_dist = false;
};

void cmd_centrality(const CommonOptions& o, const CentralityOptions& c) {
  const auto inputs = load_inputs(o);
  const fs::path root(o.output);
  const json m = manifest("centrality", o, {{"indices", c.indices}});
  report::write_json(root / "manifest.json", m);
  for (const auto& in : inputs) {
    const Topology& g = in.data.topology;
    const auto kinds = parse_kinds(c.indices, g.capacitated());
    const auto vectors = compute_all(g, std::set<IndexKind>(kinds.begin(), kinds.end()), o.damping);
    const fs::path dir = root / in.name;
    report::write_json(dir / "manifest.json", m);
    json indices = json::object();
    for (const auto& [kind, vec] : vectors) {
      report::write_file(dir / ("centrality_" + std::string(to_string(kind)) + ".csv"), report::scores_csv(g, vec));
      const auto s = graph_summary(vec);
      json entry = {{"integration", s.integration}, {"unipolarity", s.unipolarity}, {"centralization", s.centralization}};
      if (vec.eigenvalue) entry["eigenvalue"] = *vec.eigenvalue;
      if (vec.damping) entry["damping"] = *vec.damping;
      indices[std::string(to_string(kind))] = entry;
    }
    const auto dd = report::degree_distribution_dat(g);
    report::write_file(dir / "degree_distribution.dat", dd);
    if (c.print_degree_dist) std::cout << in.name << '\n' << dd;
    report::write_json(dir / "summary.json", {{"manifest", m}, {"input", input_json(in)}, {"indices", indices}});
  }
}

// ---------------------------------------------------------------- correlate

struct CorrelateOptions {
  std::string indices = "all";
  double topk = 0.05;
  bool aggregate = false;
  bool diagnostics = false;
  std::string sweep;
  std::string against = "dc,bc";
};

constexpr double kDiagnosticTopK = 0.05;

void cmd_correlate(const CommonOptions& o, const CorrelateOptions& c) {
  const auto sweep_values = c.sweep.empty() ? std::vector<double>{} : parse_range(c.sweep);
  const auto against = parse_kinds(c.against, false);
  const auto inputs = load_inputs(o);
  const fs::path root(o.output);
  const json m = manifest("correlate", o,
                          {{"indices", c.indices},
                           {"k_fraction", c.topk},
                           {"aggregate", c.aggregate},
                           {"sweep_damping", c.sweep},
                           {"against", c.against}});
  report::write_json(root / "manifest.json", m);

  std::vector<CorrelationMatrix> matrices;
  std::vector<std::pair<std::string, BottomRankDiagnostics>> diagnostics;
  for (const auto& in : inputs) {
    const Topology& g = in.data.topology;
    const auto kinds = parse_kinds(c.indices, g.capacitated());
    const auto vectors = compute_all(g, std::set<IndexKind>(kinds.begin(), kinds.end()), o.damping);
    const auto cm = correlation_matrix(vectors, c.topk);
    const fs::path dir = root / in.name;
    report::write_json(dir / "manifest.json", m);
    report::write_file(dir / "spearman.csv", report::matrix_csv(cm.kinds, cm.spearman));
    report::write_file(dir / "kendall.csv", report::matrix_csv(cm.kinds, cm.kendall));
    report::write_file(dir / "pearson.csv", report::matrix_csv(cm.kinds, cm.pearson));
    report::write_file(dir / "overlap.csv", report::matrix_csv(cm.kinds, cm.overlap));
    json out = {{"manifest", m},
                {"input", input_json(in)},
                {"indices", kind_names(cm.kinds)},
                {"k_fraction", cm.k_fraction},
                {"top_k", top_k_count(g.size(), cm.k_fraction)},
                {"spearman", report::matrix_json(cm.kinds, cm.spearman)},
                {"kendall", report::matrix_json(cm.kinds, cm.kendall)},
                {"pearson", report::matrix_json(cm.kinds, cm.pearson)},
                {"overlap", report::matrix_json(cm.kinds, cm.overlap)}};

    if ((c.diagnostics || c.aggregate) && vectors.count(IndexKind::DC) && vectors.count(IndexKind::BC)) {
      const auto d = bottom_rank_diagnostics(g, rank(vectors.at(IndexKind::DC)), rank(vectors.at(IndexKind::BC)),
                                             kDiagnosticTopK);
      out["diagnostics"] = {{"bc_dc_spearman", d.spearman.value},
                            {"top5_overlap_percent", d.top_k_overlap},
                            {"dc_eq_1_fraction", d.fraction_dc_eq_1}};
      diagnostics.emplace_back(in.name, d);
    }

    if (!sweep_values.empty()) {
      const auto sweep = damping_sweep(g, sweep_values, std::set<IndexKind>(against.begin(), against.end()));
      std::string dat = "# d";
      for (auto k : sweep.against) dat += " rho_" + std::string(to_string(k));
      dat += " degenerate\n";
      for (std::size_t i = 0; i < sweep.d_values.size(); ++i) {
        dat += num(sweep.d_values[i]);
        for (const auto& rho : sweep.rho[i]) dat += ' ' + num(rho.value);
        dat += sweep.row_degenerate[i] ? " 1\n" : " 0\n";
      }
      report::write_file(dir / "damping_sweep.dat", dat);
    }
    report::write_json(dir / "correlation.json", out);
    matrices.push_back(cm);
  }

  if (c.aggregate) {
    const std::pair<const char*, PairMatrix CorrelationMatrix::*> measures[] = {
        {"spearman", &CorrelationMatrix::spearman},
        {"kendall", &CorrelationMatrix::kendall},
        {"pearson", &CorrelationMatrix::pearson},
        {"overlap", &CorrelationMatrix::overlap}};
    for (const auto& [name, member] : measures) {
      const auto agg = aggregate(std::span<const CorrelationMatrix>(matrices), member);
      report::write_file(root / ("table_" + std::string(name) + ".txt"), report::aggregate_table(agg));
      report::write_file(root / ("aggregate_" + std::string(name) + ".csv"), report::aggregate_csv(agg));
    }
  }
  if (!diagnostics.empty()) {
    report::Csv csv({"topology", "bc_dc_spearman", "top5_overlap_percent", "dc_eq_1_percent"});
    std::string table = "Dataset-ID\tBC-DC Spearman\tTop-5% Overlap\tDC=1 fraction\n";
    char buf[128];
    for (const auto& [name, d] : diagnostics) {
      csv.row({name, num(d.spearman.value), num(d.top_k_overlap), num(100.0 * d.fraction_dc_eq_1)});
      std::snprintf(buf, sizeof buf, "\t%.2f\t%.0f%%\t%.0f%%\n", d.spearman.value, d.top_k_overlap,
                    100.0 * d.fraction_dc_eq_1);
      table += name + buf;
    }
    report::write_file(root / "diagnostics.csv", csv.str());
    report::write_file(root / "diagnostics.txt", table);
  }
}

// ---------------------------------------------------------------- attack / capacity

struct AttackOptions {
  std::string drivers = "all";
  std::string mode = "simultaneous";
  double max_frac = 0.05;
  std::vector<std::size_t> steps;
  std::string pmf_of;
  std::string metric = "gcc";
  std::size_t bins = 10;
};

AttackPlan make_plan(const AttackOptions& a, IndexKind driver, std::size_t n) {
  AttackPlan plan;
  plan.driver = driver;
  plan.mode = a.mode == "sequential" ? AttackMode::sequential : AttackMode::simultaneous;
  plan.steps = a.steps.empty() ? default_steps(n, a.max_frac) : a.steps;
  return plan;
}

Metric parse_metric(const std::string& s) {
  if (s == "gcc") return Metric::gcc_size;
  if (s == "components") return Metric::num_components;
  if (s == "avg-path") return Metric::avg_shortest_path;
  return Metric::agg_max_flow;
}

json attack_manifest_extra(const AttackOptions& a) {
  return {{"drivers", a.drivers},
          {"attack_mode", a.mode},
          {"max_frac", a.max_frac},
          {"steps", a.steps},
          {"pmf_of", a.pmf_of},
          {"metric", a.metric},
          {"bins", a.bins}};
}

void write_impacts(const fs::path& dir, const std::vector<EnvelopeReport>& reports) {
  report::Csv csv({"metric", "driver", "impact_factor"});
  for (const auto& r : reports)
    for (auto d : r.drivers) {
      std::string value = "nan";
      try {
        value = num(impact_factor(r, d));
      } catch (const ComputeError&) {
      }
      csv.row({std::string(to_string(r.metric)), std::string(to_string(d)), value});
    }
  report::write_file(dir / "impact_factors.csv", csv.str());
}

void write_pmf(const fs::path& root, const AttackOptions& a, Metric metric,
               const std::vector<EnvelopeReport>& reports) {
  if (a.pmf_of.empty()) return;
  const auto kind = parse_index_kind(a.pmf_of);
  if (!kind) throw CLI::ValidationError("unknown index '" + a.pmf_of + "'");
  const auto mass = if_pmf(std::span<const EnvelopeReport>(reports), *kind, a.bins);
  report::write_file(root / ("pmf_" + std::string(to_string(metric)) + "_" + std::string(to_string(*kind)) + ".dat"),
                     report::pmf_dat(mass));
}

void cmd_attack(const CommonOptions& o, const AttackOptions& a) {
  const Metric pmf_metric = parse_metric(a.metric);
  const auto inputs = load_inputs(o);
  const fs::path root(o.output);
  const json m = manifest("attack", o, attack_manifest_extra(a));
  report::write_json(root / "manifest.json", m);
  std::vector<EnvelopeReport> pmf_reports;
  for (const auto& in : inputs) {
    const Topology& g = in.data.topology;
    const fs::path dir = root / in.name;
    report::write_json(dir / "manifest.json", m);
    std::vector<AttackTrace> traces;
    for (auto driver : parse_kinds(a.drivers, g.capacitated())) {
      traces.push_back(run_attack(g, make_plan(a, driver, g.size()), o.damping));
      report::write_file(dir / ("trace_" + std::string(to_string(driver)) + ".csv"),
                         report::trace_csv(g, traces.back()));
    }
    json out = {{"manifest", m}, {"input", input_json(in)}, {"envelopes", json::array()}};
    if (traces.size() >= 2) {
      std::vector<EnvelopeReport> reports;
      for (auto metric : {Metric::gcc_size, Metric::num_components, Metric::avg_shortest_path}) {
        reports.push_back(envelope(std::span<const AttackTrace>(traces), metric));
        report::write_file(dir / ("envelope_" + std::string(to_string(metric)) + ".csv"),
                           report::envelope_csv(reports.back()));
        out["envelopes"].push_back(report::envelope_json(reports.back()));
        if (metric == pmf_metric) pmf_reports.push_back(reports.back());
      }
      write_impacts(dir, reports);
    }
    report::write_json(dir / "attack.json", out);
  }
  write_pmf(root, a, pmf_metric, pmf_reports);
}

void cmd_capacity(const CommonOptions& o, const AttackOptions& a) {
  const auto inputs = load_inputs(o);
  const fs::path root(o.output);
  const json m = manifest("capacity", o, attack_manifest_extra(a));
  report::write_json(root / "manifest.json", m);
  std::vector<EnvelopeReport> reports;
  for (const auto& in : inputs) {
    const Topology& g = in.data.topology;
    const fs::path dir = root / in.name;
    report::write_json(dir / "manifest.json", m);
    std::vector<CapacityTrace> traces;
    for (auto driver : parse_kinds(a.drivers, true)) {
      if (driver == IndexKind::PG) throw ComputeError("weighted PageRank out of scope");
      traces.push_back(run_capacity_attack(g, make_plan(a, driver, g.size()), o.damping));
      report::write_file(dir / ("capacity_" + std::string(to_string(driver)) + ".csv"),
                         report::capacity_csv(g, traces.back()));
    }
    json out = {{"manifest", m}, {"input", input_json(in)}, {"unordered_pairs", true}};
    if (traces.size() >= 2) {
      reports.push_back(envelope(std::span<const CapacityTrace>(traces)));
      report::write_file(dir / "envelope_agg_max_flow.csv", report::envelope_csv(reports.back()));
      write_impacts(dir, {reports.back()});
      out["envelope"] = report::envelope_json(reports.back());
    }
    report::write_json(dir / "capacity.json", out);
  }
  write_pmf(root, a, Metric::agg_max_flow, reports);
}

// ---------------------------------------------------------------- generate

struct GenerateOptions {
  std::string model = "ba";
  std::size_t nodes = 100;
  std::size_t m = 2;
  double p = 0.05;
  std::uint64_t seed = 1;
  std::string capacities;
  std::string output;
};

void cmd_generate(const GenerateOptions& gen) {
  Synth synth(gen.seed);
  Topology g = gen.model == "ba" ? synth.barabasi_albert(gen.nodes, gen.m) : synth.random_connected(gen.nodes, gen.p);
  if (!gen.capacities.empty()) {
    const auto colon = gen.capacities.find(':');
    int lo = 0, hi = 0;
    try {
      lo = std::stoi(gen.capacities.substr(0, colon));
      hi = colon == std::string::npos ? lo : std::stoi(gen.capacities.substr(colon + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--capacities expects lo:hi");
    }
    if (lo < 1 || hi < lo) throw CLI::ValidationError("--capacities expects 1 <= lo <= hi");
    g = synth.with_capacities(g, lo, hi);
  }
  const std::string text = "# toposcope generate --model " + gen.model + " --nodes " + std::to_string(gen.nodes) +
                           " --seed " + std::to_string(gen.seed) + "\n" + write_edgelist(g);
  if (gen.output.empty())
    std::cout << text;
  else
    report::write_file(fs::absolute(gen.output), text);
}

void apply_thread_setting(unsigned requested) {
  if (const char* env = std::getenv("TOPOSCOPE_THREADS"); env && *env) {
    try {
      requested = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw CLI::ValidationError("TOPOSCOPE_THREADS must be a non-negative integer");
    }
  }
  set_thread_count(requested);
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Centrality, rank-agreement and attack-vulnerability analysis of router-level topologies"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOptions common;
  CentralityOptions centrality_opts;
  CorrelateOptions correlate_opts;
  AttackOptions attack_opts;
  AttackOptions capacity_opts;
  GenerateOptions generate_opts;

  auto* centrality = app.add_subcommand("centrality", "Per-node centrality scores and graph-level summaries");
  add_common(*centrality, common);
  centrality->add_option("--indices", centrality_opts.indices, "'all' or a list such as dc,bc,pg")->capture_default_str();
  centrality->add_flag("--degree-dist", centrality_opts.print_degree_dist, "Also print the degree distribution");

  auto* correlate = app.add_subcommand("correlate", "Rank correlation and top-k overlap between indices");
  add_common(*correlate, common);
  correlate->add_option("--indices", correlate_opts.indices, "'all' or a list of indices")->capture_default_str();
  correlate->add_option("--topk", correlate_opts.topk, "Top-k fraction for the overlap measure")
      ->check(CLI::Range(1e-12, 1.0))
      ->capture_default_str();
  correlate->add_flag("--aggregate", correlate_opts.aggregate, "Mean and variance tables over all inputs");
  correlate->add_flag("--diagnostics", correlate_opts.diagnostics, "DC/BC bottom-rank diagnostics");
  correlate->add_option("--sweep-damping", correlate_opts.sweep, "PageRank damping sweep start:stop:step");
  correlate->add_option("--against", correlate_opts.against, "Indices compared with PageRank in the sweep")
      ->capture_default_str();

  auto add_attack_options = [](CLI::App* cmd, AttackOptions& a, const char* metric_choices) {
    cmd->add_option("--drivers", a.drivers, "'all' or a list of driving indices")->capture_default_str();
    cmd->add_option("--mode", a.mode, "Removal mode")
        ->check(CLI::IsMember({"simultaneous", "sequential"}))
        ->capture_default_str();
    cmd->add_option("--max-frac", a.max_frac, "Remove up to this fraction of nodes")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--steps", a.steps, "Explicit removal counts (overrides --max-frac)")->delimiter(',');
    cmd->add_option("--pmf-of", a.pmf_of, "Index whose impact-factor PMF is emitted");
    cmd->add_option("--bins", a.bins, "PMF bins")->check(CLI::PositiveNumber)->capture_default_str();
    if (metric_choices)
      cmd->add_option("--metric", a.metric, "Metric for the PMF")
          ->check(CLI::IsMember({"gcc", "components", "avg-path"}))
          ->capture_default_str();
  };

  auto* attack = app.add_subcommand("attack", "Centrality-driven node removal and connectivity envelopes");
  add_common(*attack, common);
  add_attack_options(attack, attack_opts, "connectivity");

  auto* capacity = app.add_subcommand("capacity", "Aggregate max-flow under centrality-driven node removal");
  add_common(*capacity, common);
  add_attack_options(capacity, capacity_opts, nullptr);
  capacity_opts.metric = "flow";

  auto* generate = app.add_subcommand("generate", "Write a seeded synthetic topology as an edge list");
  generate->add_option("--model", generate_opts.model, "ba (preferential attachment) or random")
      ->check(CLI::IsMember({"ba", "random"}))
      ->capture_default_str();
  generate->add_option("--nodes", generate_opts.nodes, "Node count")->check(CLI::Range(2, 10000000))->capture_default_str();
  generate->add_option("--m", generate_opts.m, "Links per new node (ba)")->capture_default_str();
  generate->add_option("--p", generate_opts.p, "Extra-edge probability (random)")->capture_default_str();
  generate->add_option("--seed", generate_opts.seed, "Random seed")->capture_default_str();
  generate->add_option("--capacities", generate_opts.capacities, "Integer capacity range lo:hi");
  generate->add_option("-o,--output", generate_opts.output, "Output file (default stdout)");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();  // program name
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadArguments;
  }

  try {
    apply_thread_setting(common.threads);
    if (*centrality) cmd_centrality(common, centrality_opts);
    if (*correlate) cmd_correlate(common, correlate_opts);
    if (*attack) cmd_attack(common, attack_opts);
    if (*capacity) cmd_capacity(common, capacity_opts);
    if (*generate) cmd_generate(generate_opts);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const ComputeError& e) {
    std::cerr << "computation error: " << e.what() << '\n';
    return kComputeError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}

}  // namespace toposcope::cli
