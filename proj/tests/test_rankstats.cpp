#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "toposcope/generators.hpp"
#include "toposcope/rankstats.hpp"

namespace toposcope {
namespace {

Ranking ranked(std::vector<double> v) { return rank(std::span<const double>(v)); }

CentralityVector vec(IndexKind k, std::vector<double> v) { return {k, std::move(v), {}, {}}; }

TEST(Rank, Examples) {
  EXPECT_EQ(ranked({0.9, 0.1, 0.5}).frac_rank, (std::vector<double>{1, 3, 2}));
  EXPECT_EQ(ranked({0.5, 0.5, 0.1}).frac_rank, (std::vector<double>{1.5, 1.5, 3}));
  EXPECT_EQ(ranked({7, 7, 7, 7}).frac_rank, (std::vector<double>{2.5, 2.5, 2.5, 2.5}));
  EXPECT_TRUE(ranked({7, 7, 7, 7}).all_tied());
}

TEST(Rank, OrderBreaksTiesByAscendingId) {
  EXPECT_EQ(ranked({0.1, 0.5, 0.5, 0.9, 0.5}).order, (std::vector<NodeId>{3, 1, 2, 4, 0}));
}

TEST(Rank, RoundingNoiseCountsAsTie) {
  const double a = 0.1 + 0.2, b = 0.3;
  ASSERT_NE(a, b);
  const auto r = ranked({b, a, 0.05});
  EXPECT_EQ(r.frac_rank, (std::vector<double>{1.5, 1.5, 3}));
  EXPECT_EQ(r.order, (std::vector<NodeId>{0, 1, 2}));
}

TEST(Rank, RejectsNan) { EXPECT_THROW(ranked({1.0, std::nan("")}), ComputeError); }

TEST(Spearman, IdenticalAndReversed) {
  const auto r = ranked({4, 3, 2, 1});
  EXPECT_EQ(spearman(r, r).value, 1.0);
  EXPECT_EQ(spearman(r, ranked({1, 2, 3, 4})).value, -1.0);
}

TEST(Spearman, TieFreeMatchesClosedFormExactly) {
  Synth synth(1);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + synth.index(200);
    std::vector<double> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<double>(i);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[synth.index(i)]);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = synth.uniform();
      y[i] = perm[i];
    }
    const auto rx = ranked(x), ry = ranked(y);
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum_sq += std::pow(rx.frac_rank[i] - ry.frac_rank[i], 2);
    const double nd = static_cast<double>(n);
    EXPECT_EQ(spearman(rx, ry).value, 1.0 - 6.0 * sum_sq / (nd * (nd * nd - 1.0)));
  }
}

TEST(Spearman, ConstantRankingIsDegenerate) {
  const auto c = spearman(ranked({1, 1, 1}), ranked({1, 2, 3}));
  EXPECT_TRUE(c.degenerate);
  EXPECT_EQ(c.value, 0.0);
  EXPECT_THROW(spearman(ranked({1}), ranked({1})), ComputeError);
  EXPECT_THROW(spearman(ranked({1, 2}), ranked({1, 2, 3})), ComputeError);
}

TEST(Kendall, Examples) {
  const auto r = ranked({4, 3, 2, 1});
  EXPECT_EQ(kendall(r, r).value, 1.0);
  EXPECT_EQ(kendall(r, ranked({1, 2, 3, 4})).value, -1.0);
  EXPECT_NEAR(kendall(ranked({1, 2, 3, 4}), ranked({1, 2, 4, 3})).value, 2.0 / 3, 1e-15);
  EXPECT_THROW(kendall(ranked({1}), ranked({1})), ComputeError);
  EXPECT_TRUE(kendall(ranked({2, 2, 2}), ranked({1, 2, 3})).degenerate);
}

TEST(Kendall, MatchesBruteForcePairCount) {
  Synth synth(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + synth.index(199);
    // small integer alphabets force plenty of ties in both vectors
    const std::size_t levels = 2 + synth.index(trial % 2 ? 6 : 400);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(synth.index(levels));
      y[i] = static_cast<double>(synth.index(levels));
    }
    const auto rx = ranked(x), ry = ranked(y);
    if (rx.all_tied() || ry.all_tied()) continue;
    EXPECT_NEAR(kendall(rx, ry).value, oracle::kendall_tau_b(x, y), 1e-12) << "trial " << trial;
  }
}

TEST(Pearson, Examples) {
  const std::vector<double> c1{1, 5, 2, 8};
  std::vector<double> affine, neg;
  for (double v : c1) {
    affine.push_back(2 * v + 3);
    neg.push_back(-v);
  }
  EXPECT_NEAR(pearson(c1, affine), 1.0, 1e-15);
  EXPECT_NEAR(pearson(c1, neg), -1.0, 1e-15);
  EXPECT_NEAR(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}), 0.5, 1e-15);
  try {
    pearson(std::vector<double>{1, 1}, std::vector<double>{1, 2});
    FAIL();
  } catch (const ComputeError& e) {
    EXPECT_EQ(std::string(e.what()), "degenerate: constant scores");
  }
}

TEST(TopK, Examples) {
  const auto r = ranked({0.9, 0.8, 0.1, 0.2});
  EXPECT_EQ(top_k_overlap(r, r, 0.05), 100.0);
  EXPECT_EQ(top_k_overlap(r, ranked({0.1, 0.2, 0.9, 0.8}), 0.5), 0.0);
  EXPECT_EQ(top_k_count(4, 0.05), 1u);
  EXPECT_EQ(top_k_count(100, 0.15), 15u);
  EXPECT_EQ(top_k_count(10, 1.0), 10u);
  EXPECT_THROW(top_k_overlap(r, r, 0.0), ComputeError);
  EXPECT_THROW(top_k_overlap(r, r, 1.5), ComputeError);
}

TEST(TopK, BoundaryTiesFollowOrderPermutation) {
  // top-2 of (5, 3, 3, 3) is {0, 1}; of (5, 1, 3, 3) it is {0, 2}
  EXPECT_EQ(top_k_overlap(ranked({5, 3, 3, 3}), ranked({5, 1, 3, 3}), 0.5), 50.0);
}

TEST(TopK, Symmetric) {
  Synth synth(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(60), y(60);
    for (std::size_t i = 0; i < 60; ++i) {
      x[i] = static_cast<double>(synth.index(10));
      y[i] = synth.uniform();
    }
    const double f = 0.01 + 0.99 * synth.uniform();
    EXPECT_EQ(top_k_overlap(ranked(x), ranked(y), f), top_k_overlap(ranked(y), ranked(x), f));
  }
}

TEST(Invariance, StrictlyIncreasingTransforms) {
  Synth synth(4);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> x(80), y(80), tx(80), ty(80);
    for (std::size_t i = 0; i < 80; ++i) {
      x[i] = 1.0 + static_cast<double>(synth.index(20));
      y[i] = synth.uniform();
      tx[i] = std::log(x[i]) * 3.0 - 2.0;
      ty[i] = std::exp(3.0 * y[i]);
    }
    const auto a = ranked(x), b = ranked(y), ta = ranked(tx), tb = ranked(ty);
    EXPECT_EQ(spearman(a, b).value, spearman(ta, tb).value);
    EXPECT_EQ(kendall(a, b).value, kendall(ta, tb).value);
    EXPECT_EQ(spearman(a, a).value, 1.0);
    EXPECT_EQ(kendall(b, b).value, 1.0);
    EXPECT_EQ(top_k_overlap(a, a, 0.1), 100.0);
  }
}

TEST(Matrix, IdenticalVectors) {
  std::map<IndexKind, CentralityVector> v;
  v[IndexKind::DC] = vec(IndexKind::DC, {3, 1, 2, 5});
  v[IndexKind::BC] = vec(IndexKind::BC, {3, 1, 2, 5});
  const auto m = correlation_matrix(v, 0.5);
  ASSERT_EQ(m.kinds.size(), 2u);
  EXPECT_EQ(m.spearman.at(0, 1), 1.0);
  EXPECT_EQ(m.kendall.at(1, 0), 1.0);
  EXPECT_NEAR(m.pearson.at(0, 1), 1.0, 1e-15);
  EXPECT_EQ(m.overlap.at(0, 1), 100.0);
  EXPECT_EQ(m.k_fraction, 0.5);
}

TEST(Matrix, SevenIndicesSymmetricUnitDiagonal) {
  Synth synth(5);
  const auto g = synth.barabasi_albert(120, 2);
  const auto m = correlation_matrix(compute_all(g, applicable_kinds(g)), 0.05);
  ASSERT_EQ(m.kinds.size(), 7u);
  for (const PairMatrix* pm : {&m.spearman, &m.kendall, &m.pearson}) {
    for (std::size_t i = 0; i < 7; ++i) {
      EXPECT_EQ(pm->at(i, i), 1.0);
      for (std::size_t j = 0; j < 7; ++j) {
        EXPECT_EQ(pm->at(i, j), pm->at(j, i));
        EXPECT_GE(pm->at(i, j), -1.0);
        EXPECT_LE(pm->at(i, j), 1.0);
      }
    }
  }
  EXPECT_EQ(m.overlap.at(3, 3), 100.0);
}

TEST(Matrix, DegeneratePairsAreFlagged) {
  std::map<IndexKind, CentralityVector> v;
  v[IndexKind::DC] = vec(IndexKind::DC, {1, 1, 1});
  v[IndexKind::BC] = vec(IndexKind::BC, {1, 2, 3});
  const auto m = correlation_matrix(v, 0.5);
  EXPECT_TRUE(m.spearman.is_degenerate(0, 1));
  EXPECT_TRUE(m.kendall.is_degenerate(1, 0));
  EXPECT_TRUE(m.pearson.is_degenerate(0, 1));
  EXPECT_FALSE(m.overlap.is_degenerate(0, 1));
}

TEST(Matrix, MismatchedNodeSets) {
  std::map<IndexKind, CentralityVector> v;
  v[IndexKind::DC] = vec(IndexKind::DC, {1, 2});
  v[IndexKind::BC] = vec(IndexKind::BC, {1, 2, 3});
  EXPECT_THROW(correlation_matrix(v, 0.5), ComputeError);
}

TEST(Aggregate, PopulationMeanAndVarianceSkippingDegenerate) {
  std::vector<CorrelationMatrix> ms(3);
  const double rhos[] = {0.5, 0.7, 0.9};
  for (int t = 0; t < 3; ++t) {
    ms[t].kinds = {IndexKind::DC, IndexKind::BC};
    ms[t].spearman = ms[t].kendall = ms[t].pearson = ms[t].overlap = PairMatrix(2);
    ms[t].spearman.set(0, 0, 1.0);
    ms[t].spearman.set(1, 1, 1.0);
    ms[t].spearman.set(0, 1, rhos[t], t == 2);
  }
  const auto agg = aggregate(ms, &CorrelationMatrix::spearman);
  EXPECT_EQ(agg.at(0, 1).samples, 2u);
  EXPECT_NEAR(agg.at(0, 1).mean, 0.6, 1e-15);
  EXPECT_NEAR(agg.at(0, 1).variance, 0.01, 1e-15);
  EXPECT_EQ(agg.at(0, 0).mean, 1.0);
  EXPECT_EQ(agg.at(0, 0).variance, 0.0);

}

TEST(Aggregate, MixedIndexSetsUseTopologiesHavingBothIndices) {
  std::vector<CorrelationMatrix> ms(2);
  ms[0].kinds = {IndexKind::DC, IndexKind::BC, IndexKind::PG};
  ms[1].kinds = {IndexKind::DC, IndexKind::BC};
  ms[0].spearman = PairMatrix(3);
  ms[1].spearman = PairMatrix(2);
  ms[0].spearman.set(0, 1, 0.4);
  ms[0].spearman.set(0, 2, 0.9);
  ms[1].spearman.set(0, 1, 0.8);
  const auto agg = aggregate(ms, &CorrelationMatrix::spearman);
  ASSERT_EQ(agg.kinds.size(), 3u);
  auto pos = [&](IndexKind k) { return std::find(agg.kinds.begin(), agg.kinds.end(), k) - agg.kinds.begin(); };
  const auto dc = pos(IndexKind::DC), bc = pos(IndexKind::BC), pg = pos(IndexKind::PG);
  EXPECT_EQ(agg.at(dc, bc).samples, 2u);
  EXPECT_NEAR(agg.at(dc, bc).mean, 0.6, 1e-15);
  EXPECT_EQ(agg.at(dc, pg).samples, 1u);
  EXPECT_EQ(agg.at(dc, pg).mean, 0.9);
  EXPECT_EQ(agg.at(bc, pg).mean, 0.0);
  EXPECT_THROW(aggregate(std::span<const CorrelationMatrix>{}, &CorrelationMatrix::spearman), ComputeError);
}

TEST(DampingSweepTest, ZeroDampingIsDegenerate) {
  Synth synth(6);
  const auto g = synth.barabasi_albert(50, 2);
  const std::vector<double> ds{0.0, 0.5, 0.85};
  const auto sweep = damping_sweep(g, ds, {IndexKind::DC, IndexKind::BC});
  ASSERT_EQ(sweep.rho.size(), 3u);
  EXPECT_EQ(sweep.against, (std::vector<IndexKind>{IndexKind::DC, IndexKind::BC}));
  EXPECT_TRUE(sweep.row_degenerate[0]);
  EXPECT_TRUE(sweep.rho[0][0].degenerate);
  EXPECT_EQ(sweep.rho[0][0].value, 0.0);
  EXPECT_FALSE(sweep.row_degenerate[2]);
  EXPECT_GT(sweep.rho[2][0].value, 0.5);
}

TEST(DampingSweepTest, RegularGraphFlagsEveryRow) {
  const auto g = make_topology(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  const std::vector<double> ds{0.1, 0.5, 0.9};
  const auto sweep = damping_sweep(g, ds, {IndexKind::DC});
  for (char flag : sweep.row_degenerate) EXPECT_TRUE(flag);
}

TEST(DampingSweepTest, PgDcCorrelationGrowsWithDamping) {
  Synth synth(7);
  const auto g = synth.barabasi_albert(500, 2);
  const std::vector<double> ds{0.30, 0.95};
  const auto sweep = damping_sweep(g, ds, {IndexKind::DC});
  EXPECT_GT(sweep.rho[1][0].value, sweep.rho[0][0].value);
}

TEST(DampingSweepTest, RejectsCapacitated) {
  const std::vector<double> ds{0.5};
  EXPECT_THROW(damping_sweep(make_capacitated(3, {{0, 1, 1.0}, {1, 2, 2.0}}), ds, {IndexKind::DC}),
               ComputeError);
}

TEST(Diagnostics, StarAndCycle) {
  const auto star = make_topology(4, {{0, 1}, {0, 2}, {0, 3}});
  const auto dc = rank(degree_centrality(star)), bc = rank(betweenness_centrality(star));
  const auto d = bottom_rank_diagnostics(star, dc, bc);
  EXPECT_EQ(d.fraction_dc_eq_1, 0.75);
  EXPECT_EQ(d.top_k_overlap, 100.0);
  for (NodeId u = 1; u < 4; ++u) EXPECT_EQ(betweenness_centrality(star).scores[u], 0.0);

  const auto cycle = make_topology(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  const auto dc2 = rank(degree_centrality(cycle)), bc2 = rank(betweenness_centrality(cycle));
  const auto d2 = bottom_rank_diagnostics(cycle, dc2, bc2);
  EXPECT_EQ(d2.fraction_dc_eq_1, 0.0);
  EXPECT_TRUE(d2.spearman.degenerate);
}

}  // namespace
}  // namespace toposcope
