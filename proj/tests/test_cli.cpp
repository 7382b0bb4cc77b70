#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cli.hpp"

namespace toposcope::cli {
namespace {

namespace fs = std::filesystem;

const std::string kFixture = std::string(TOPOSCOPE_FIXTURES) + "/uninett_minmax.graphml";

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("toposcope_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "toposcope");
    return run(args);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string generate(const std::string& name, const std::string& model, int nodes, int seed,
                       const std::string& capacities = "") {
    std::vector<std::string> args{"generate", "--model", model, "--nodes", std::to_string(nodes),
                                  "--seed", std::to_string(seed), "-o", path(name)};
    if (!capacities.empty()) {
      args.push_back("--capacities");
      args.push_back(capacities);
    }
    EXPECT_EQ(run_cli(args), kOk);
    return path(name);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  static std::map<std::string, std::string> snapshot(const fs::path& root) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(root))
      if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = slurp(e.path());
    return files;
  }

  fs::path dir_;
};

TEST_F(Cli, HelpAndVersionExitZero) {
  EXPECT_EQ(run_cli({"--help"}), kOk);
  EXPECT_EQ(run_cli({"--version"}), kOk);
}

TEST_F(Cli, BadArgumentsExitFour) {
  EXPECT_EQ(run_cli({}), kBadArguments);
  EXPECT_EQ(run_cli({"centrality"}), kBadArguments);
  EXPECT_EQ(run_cli({"centrality", "-i", kFixture, "--bogus"}), kBadArguments);
  EXPECT_EQ(run_cli({"correlate", "-i", kFixture, "--topk", "2"}), kBadArguments);
  EXPECT_EQ(run_cli({"centrality", "-i", kFixture, "--indices", "xyz", "-o", path("o")}), kBadArguments);
  EXPECT_EQ(run_cli({"attack", "-i", kFixture, "--mode", "sideways"}), kBadArguments);
  EXPECT_EQ(run_cli({"correlate", "-i", kFixture, "--sweep-damping", "0.1:0.9", "-o", path("o")}), kBadArguments);
}

TEST_F(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run_cli({"centrality", "-i", path("missing.txt"), "-o", path("o")}), kInputError);
  EXPECT_EQ(run_cli({"capacity", "-i", path("missing.graphml"), "-o", path("o")}), kInputError);
  std::ofstream(path("bad.txt")) << "a b\nc\n";
  EXPECT_EQ(run_cli({"centrality", "-i", path("bad.txt"), "-o", path("o")}), kInputError);
  std::ofstream(path("bad.graphml")) << "<graphml><graph>";
  EXPECT_EQ(run_cli({"centrality", "-i", path("bad.graphml"), "-o", path("o")}), kInputError);
}

TEST_F(Cli, WeightedPageRankExitsThree) {
  EXPECT_EQ(run_cli({"centrality", "-i", kFixture, "--indices", "pg", "-o", path("o")}), kComputeError);
  EXPECT_EQ(run_cli({"capacity", "-i", kFixture, "--drivers", "pg,dc", "-o", path("o")}), kComputeError);
}

TEST_F(Cli, CentralityWritesSevenIndices) {
  const auto g = generate("g.txt", "ba", 60, 3);
  ASSERT_EQ(run_cli({"centrality", "-i", g, "--indices", "all", "--damping", "0.85", "--degree-dist", "-o", path("out")}),
            kOk);
  const fs::path d = dir_ / "out" / "g";
  for (const char* k : {"DC", "BC", "CC", "HC", "ECC", "EC", "PG"}) {
    const auto csv = slurp(d / ("centrality_" + std::string(k) + ".csv"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "node,score") << k;
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 61) << k;
  }
  EXPECT_TRUE(fs::exists(d / "summary.json"));
  EXPECT_TRUE(fs::exists(d / "manifest.json"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "manifest.json"));
  const auto dd = slurp(d / "degree_distribution.dat");
  EXPECT_EQ(dd.substr(0, dd.find('\n')), "# degree count");
}

TEST_F(Cli, CentralityOnCapacitatedGraphSkipsPageRank) {
  ASSERT_EQ(run_cli({"centrality", "-i", kFixture, "-o", path("out")}), kOk);
  const fs::path d = dir_ / "out" / "uninett_minmax";
  EXPECT_TRUE(fs::exists(d / "centrality_EC.csv"));
  EXPECT_FALSE(fs::exists(d / "centrality_PG.csv"));
}

TEST_F(Cli, CorrelateSingleInput) {
  const auto g = generate("g.txt", "ba", 80, 4);
  ASSERT_EQ(run_cli({"correlate", "-i", g, "--topk", "0.05", "-o", path("out")}), kOk);
  for (const char* f : {"spearman.csv", "kendall.csv", "pearson.csv", "overlap.csv", "correlation.json"})
    EXPECT_TRUE(fs::exists(dir_ / "out" / "g" / f)) << f;
  EXPECT_FALSE(fs::exists(dir_ / "out" / "table_spearman.txt"));
}

TEST_F(Cli, CorrelateAggregateLayoutAndReproducibility) {
  fs::create_directories(dir_ / "zoo");
  for (int i = 0; i < 3; ++i) generate("zoo/t" + std::to_string(i) + ".txt", "ba", 70, 10 + i);
  const std::vector<std::string> args{"correlate", "-i", path("zoo"), "--topk", "0.15", "--aggregate", "-o", path("out")};
  ASSERT_EQ(run_cli(args), kOk);
  const auto first = snapshot(dir_ / "out");

  const auto table = first.at("table_spearman.txt");
  std::istringstream lines(table);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "|\tBC\tCC\tDC\tEC\tHC\tECC\tPG");
  std::getline(lines, line);
  EXPECT_EQ(line, "BC\t1\t\t\t\t\t\t");
  std::getline(lines, line);
  EXPECT_EQ(line.substr(0, 3), "CC\t");
  EXPECT_NE(line.find("±"), std::string::npos);
  EXPECT_TRUE(first.count("aggregate_kendall.csv"));
  EXPECT_TRUE(first.count("diagnostics.csv"));
  const auto diag = first.at("diagnostics.txt");
  EXPECT_EQ(diag.substr(0, diag.find('\n')), "Dataset-ID\tBC-DC Spearman\tTop-5% Overlap\tDC=1 fraction");
  EXPECT_EQ(std::count(diag.begin(), diag.end(), '\n'), 4);

  fs::remove_all(dir_ / "out");
  ASSERT_EQ(run_cli(args), kOk);
  EXPECT_EQ(snapshot(dir_ / "out"), first);
}

TEST_F(Cli, CorrelateDampingSweep) {
  const auto g = generate("g.txt", "ba", 60, 5);
  ASSERT_EQ(run_cli({"correlate", "-i", g, "--sweep-damping", "0.1:0.9:0.1", "--against", "dc,bc,ec", "-o", path("out")}),
            kOk);
  const auto dat = slurp(dir_ / "out" / "g" / "damping_sweep.dat");
  EXPECT_EQ(dat.substr(0, dat.find('\n')), "# d rho_DC rho_BC rho_EC degenerate");
  EXPECT_EQ(std::count(dat.begin(), dat.end(), '\n'), 10);
}

TEST_F(Cli, AttackWritesTracesEnvelopesAndPmf) {
  fs::create_directories(dir_ / "data");
  for (int i = 0; i < 3; ++i) generate("data/n" + std::to_string(i) + ".txt", "ba", 80, 20 + i);
  ASSERT_EQ(run_cli({"attack", "-i", path("data"), "--drivers", "all", "--max-frac", "0.05", "--pmf-of", "dc", "--metric",
                     "gcc", "--bins", "10", "-o", path("out")}),
            kOk);
  const fs::path d = dir_ / "out" / "n0";
  for (const char* k : {"DC", "BC", "CC", "HC", "ECC", "EC", "PG"})
    EXPECT_TRUE(fs::exists(d / ("trace_" + std::string(k) + ".csv"))) << k;
  for (const char* m : {"gcc_size", "num_components", "avg_shortest_path"}) {
    const auto csv = slurp(d / ("envelope_" + std::string(m) + ".csv"));
    EXPECT_NE(csv.substr(0, csv.find('\n')).find("max_min_ratio"), std::string::npos);
  }
  const auto trace = slurp(d / "trace_DC.csv");
  EXPECT_EQ(trace.substr(0, trace.find('\n')), "k,removed_node,gcc_size,num_components,avg_shortest_path");
  EXPECT_EQ(std::count(trace.begin(), trace.end(), '\n'), 6);  // header + k = 0..4
  EXPECT_TRUE(fs::exists(d / "impact_factors.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "pmf_gcc_size_DC.dat"));
}

TEST_F(Cli, AttackSequentialMode) {
  const auto g = generate("g.txt", "ba", 60, 6);
  ASSERT_EQ(run_cli({"attack", "-i", g, "--mode", "sequential", "--drivers", "dc,bc", "--steps", "0,1,2,3", "-o",
                     path("out")}),
            kOk);
  const auto trace = slurp(dir_ / "out" / "g" / "trace_BC.csv");
  EXPECT_EQ(std::count(trace.begin(), trace.end(), '\n'), 5);
  EXPECT_EQ(run_cli({"attack", "-i", g, "--steps", "1,2", "-o", path("out2")}), kComputeError);
}

TEST_F(Cli, CapacityOnRangeSnapshots) {
  for (const char* policy : {"min", "max", "mean"}) {
    const std::string out = path(std::string("cap_") + policy);
    ASSERT_EQ(run_cli({"capacity", "-i", kFixture, "--range-policy", policy, "--steps", "0,1,2", "-o", out}), kOk);
    const fs::path d = fs::path(out) / "uninett_minmax";
    for (const char* k : {"DC", "BC", "CC", "HC", "ECC", "EC"})
      EXPECT_TRUE(fs::exists(d / ("capacity_" + std::string(k) + ".csv"))) << k;
    EXPECT_FALSE(fs::exists(d / "capacity_PG.csv"));
    EXPECT_TRUE(fs::exists(d / "envelope_agg_max_flow.csv"));
  }
  EXPECT_NE(slurp(path("cap_min") + "/uninett_minmax/capacity_DC.csv"),
            slurp(path("cap_max") + "/uninett_minmax/capacity_DC.csv"));
}

TEST_F(Cli, CapacitySingleDriver) {
  const auto g = generate("c.txt", "ba", 40, 7, "1:10");
  ASSERT_EQ(run_cli({"capacity", "-i", g, "--drivers", "dc", "--max-frac", "0.05", "-o", path("out")}), kOk);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "c" / "capacity_DC.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "out" / "c" / "envelope_agg_max_flow.csv"));
}

TEST_F(Cli, GenerateIsDeterministic) {
  const auto a = slurp(generate("a.txt", "random", 50, 9, "1:5"));
  const auto b = slurp(generate("b.txt", "random", 50, 9, "1:5"));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, slurp(generate("c.txt", "random", 50, 10, "1:5")));
  EXPECT_EQ(run_cli({"generate", "--capacities", "5:1", "-o", path("x.txt")}), kBadArguments);
}

TEST_F(Cli, ThreadsEnvironmentOverride) {
  const auto g = generate("g.txt", "ba", 50, 11, "1:4");
  ::setenv("TOPOSCOPE_THREADS", "3", 1);
  const int code = run_cli({"capacity", "-i", g, "--drivers", "dc,bc", "--threads", "1", "-o", path("out3")});
  ::unsetenv("TOPOSCOPE_THREADS");
  ASSERT_EQ(code, kOk);
  ASSERT_EQ(run_cli({"capacity", "-i", g, "--drivers", "dc,bc", "--threads", "1", "-o", path("out1")}), kOk);
  EXPECT_EQ(slurp(path("out3") + "/g/capacity_BC.csv"), slurp(path("out1") + "/g/capacity_BC.csv"));
  ::setenv("TOPOSCOPE_THREADS", "many", 1);
  EXPECT_EQ(run_cli({"centrality", "-i", g, "-o", path("o")}), kBadArguments);
  ::unsetenv("TOPOSCOPE_THREADS");
}

}  // namespace
}  // namespace toposcope::cli
