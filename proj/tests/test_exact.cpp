#include <cmath>
#include <numeric>
#include <random>
#include <algorithm>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "lp_summary.hpp"
#include "oracles.hpp"
#include "vas/exact.hpp"

using vas::Point2D;
using vas::WeightedGraph;

TEST(WeightsFromPoints, ClosedForm) {
  const std::vector<Point2D> pts{{0, 0}, {1, 0}, {2, 0}};
  const auto w = vas::weights_from_points(pts, vas::KernelParams(1.0));
  EXPECT_DOUBLE_EQ(w(0, 1), std::exp(-0.5));
  EXPECT_DOUBLE_EQ(w(0, 2), std::exp(-2.0));
  EXPECT_DOUBLE_EQ(w(1, 2), std::exp(-0.5));
  EXPECT_EQ(w(1, 1), 0.0);

  const std::vector<Point2D> same{{3, 3}, {3, 3}};
  EXPECT_EQ(vas::weights_from_points(same, vas::KernelParams(0.2))(0, 1), 1.0);
}

TEST(WeightsFromPoints, Symmetric) {
  std::mt19937_64 rng(2);
  const auto pts = oracle::random_points(12, rng);
  const auto w = vas::weights_from_points(pts, vas::KernelParams(0.3));
  for (std::size_t i = 0; i < 12; ++i) {
    EXPECT_EQ(w(i, i), 0.0);
    for (std::size_t j = 0; j < 12; ++j) EXPECT_EQ(w(i, j), w(j, i));
  }
}

TEST(BruteForceVas, SmallCases) {
  const std::vector<Point2D> pts{{0, 0}, {1, 0}, {2, 0}};
  const auto w = vas::weights_from_points(pts, vas::KernelParams(1.0));
  const auto best = vas::brute_force_vas(w, 2);
  EXPECT_EQ(best.subset, (std::vector<std::size_t>{0, 2}));
  EXPECT_DOUBLE_EQ(best.value, std::exp(-2.0));

  const auto all = vas::brute_force_vas(w, 3);
  EXPECT_EQ(all.subset, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_NEAR(all.value, oracle::objective(pts, 1.0), 1e-15);
}

TEST(BruteForceVas, MatchesEnumerationAndBeatsRandomSubsets) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = oracle::random_points(10, rng);
    const auto w = vas::weights_from_points(pts, vas::KernelParams(0.25));
    const auto best = vas::brute_force_vas(w, 3);
    const auto ref = oracle::min_objective_subset(pts, 3, 0.25);
    EXPECT_NEAR(best.value, ref.value, 1e-12);
    for (int r = 0; r < 50; ++r) {
      std::vector<std::size_t> idx(10);
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), rng);
      std::vector<Point2D> s{pts[idx[0]], pts[idx[1]], pts[idx[2]]};
      EXPECT_LE(best.value, oracle::objective(s, 0.25) + 1e-12);
    }
  }
}

TEST(BruteForceVas, TiesPickLexicographicallySmallest) {
  vas::WeightMatrix w(4);  // all zero: every subset ties
  EXPECT_EQ(vas::brute_force_vas(w, 2).subset, (std::vector<std::size_t>{0, 1}));
}

TEST(BruteForceVas, BudgetGuard) {
  vas::WeightMatrix w(30);
  try {
    (void)vas::brute_force_vas(w, 15);
    FAIL();
  } catch (const vas::Error& e) {
    EXPECT_EQ(e.code(), vas::ErrorCode::BudgetExceeded);
  }
  EXPECT_NO_THROW((void)vas::brute_force_vas(w, 2, 435));
  EXPECT_THROW((void)vas::brute_force_vas(w, 2, 434), vas::Error);
}

TEST(Binomial, ValuesAndSaturation) {
  EXPECT_EQ(vas::binomial(5, 2), 10u);
  EXPECT_EQ(vas::binomial(30, 15), 155117520u);
  EXPECT_EQ(vas::binomial(3, 4), 0u);
  EXPECT_EQ(vas::binomial(200, 100), UINT64_MAX);
}

TEST(ExportMip, StructureForThreePoints) {
  const std::vector<Point2D> pts{{0, 0}, {1, 0}, {2, 0}};
  std::ostringstream os;
  vas::export_mip_lp(vas::weights_from_points(pts, vas::KernelParams(1.0)), 2, os);
  const auto lp = lp::summarize(os.str());
  EXPECT_EQ(lp.binaries.size(), 6u);
  EXPECT_EQ(lp.constraint_names.size(), 10u);
  EXPECT_EQ(lp.objective_terms.size(), 3u);
  EXPECT_DOUBLE_EQ(lp.objective_terms.at("b1_3"), std::exp(-2.0));
  EXPECT_EQ(lp.cardinality_rhs, 2);
  EXPECT_NE(os.str().find(" card: a1 + a2 + a3 = 2\n"), std::string::npos);
  EXPECT_NE(os.str().find(" c1_2_3: b1_2 - a1 - a2 >= -1\n"), std::string::npos);
}

TEST(ExportMip, CountsForFourPoints) {
  std::mt19937_64 rng(3);
  std::ostringstream os;
  vas::export_mip_lp(vas::weights_from_points(oracle::random_points(4, rng), vas::KernelParams(0.5)), 2, os);
  const auto lp = lp::summarize(os.str());
  EXPECT_EQ(lp.objective_terms.size(), 6u);
  EXPECT_EQ(lp.binaries.size(), 10u);
}

TEST(ExportMip, RejectsBadInput) {
  std::ostringstream os;
  EXPECT_THROW(vas::export_mip_lp(vas::WeightMatrix(1), 1, os), vas::Error);
  EXPECT_THROW(vas::export_mip_lp(vas::WeightMatrix(3), 4, os), vas::Error);
}

TEST(Reduction, TriangleHandExample) {
  WeightedGraph g(3);
  g.add_edge(0, 1, 5);
  g.add_edge(0, 2, 1);
  g.add_edge(1, 2, 2);
  const auto w = vas::reduce_mes_to_vas(g, 2);
  EXPECT_EQ(w(0, 1), 0.0);
  EXPECT_EQ(w(0, 2), 4.0);
  EXPECT_EQ(w(1, 2), 3.0);

  const auto mes = vas::solve_mes_brute(g, 2);
  EXPECT_EQ(mes.subset, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(mes.value, 5.0);
  EXPECT_EQ(vas::brute_force_vas(w, 2).subset, mes.subset);

  const auto all = vas::solve_mes_brute(g, 3);
  EXPECT_EQ(all.value, 8.0);
}

TEST(Reduction, UniformCompleteGraphGivesZeroMatrix) {
  WeightedGraph g(4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) g.add_edge(i, j, 2.5);
  }
  const auto w = vas::reduce_mes_to_vas(g, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(w(i, j), 0.0);
  }
}

TEST(Reduction, SingleEdgeOptimum) {
  WeightedGraph g(5);
  g.add_edge(1, 3, 7);
  const auto w = vas::reduce_mes_to_vas(g, 2);
  EXPECT_EQ(vas::brute_force_vas(w, 2).subset, (std::vector<std::size_t>{1, 3}));
}

TEST(Reduction, Errors) {
  WeightedGraph g(3);
  try {
    (void)vas::reduce_mes_to_vas(g, 2);
    FAIL();
  } catch (const vas::Error& e) {
    EXPECT_EQ(e.code(), vas::ErrorCode::NoEdges);
  }
  g.add_edge(0, 1, 1);
  EXPECT_THROW(g.add_edge(1, 0, 2), vas::Error);
  EXPECT_THROW(g.add_edge(2, 2, 2), vas::Error);
  EXPECT_THROW(g.add_edge(0, 3, 2), vas::Error);
  EXPECT_THROW(g.add_edge(0, 2, -1), vas::Error);
}

TEST(Reduction, SoundOnRandomSixVertexGraphs) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    WeightedGraph g(6);
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = i + 1; j < 6; ++j) {
        if (rng() % 3 != 0) g.add_edge(i, j, static_cast<double>(rng() % 10));
      }
    }
    if (g.edges().empty()) continue;
    for (std::size_t k = 1; k <= 6; ++k) {
      const auto vas_best = vas::brute_force_vas(vas::reduce_mes_to_vas(g, k), k);
      const auto mes_best = vas::solve_mes_brute(g, k);
      ASSERT_EQ(vas::induced_weight(g, vas_best.subset), mes_best.value);
    }
  }
}
