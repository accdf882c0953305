#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "homophily/generators.hpp"
#include "homophily/metrics.hpp"

using namespace homophily;

namespace {

double mean(const std::vector<double>& xs) { return std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size(); }

double pop_sd(const std::vector<double>& xs) {
  const double m = mean(xs);
  double s = 0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / xs.size());
}

void expect_plan_invariants(const StubPlan& plan, std::size_t degree) {
  for (std::size_t i = 0; i < plan.same.size(); ++i) EXPECT_EQ(plan.same[i] + plan.cross[i], degree);
  EXPECT_EQ(plan.same_total() % 2, 0u);
}

ConfigModelSpec fig4a(double sigma_red) {
  ConfigModelSpec s;
  s.n = 10000;
  s.k = 5000;
  s.d = 100;
  s.lambda_red = 0.4;
  s.sigma_red = sigma_red;
  s.lambda_blue = 0.3;
  s.sigma_blue = 0.15;
  s.seed = 11;
  return s;
}

}  // namespace

TEST(StreamSeed, DistinctAndStable) {
  EXPECT_EQ(derive_stream_seed(1, 2), derive_stream_seed(1, 2));
  EXPECT_NE(derive_stream_seed(1, 2), derive_stream_seed(1, 3));
  EXPECT_NE(derive_stream_seed(1, 2), derive_stream_seed(2, 2));
}

TEST(ClippedNormal, ZeroSdIsConstant) {
  Rng rng(1);
  for (double v : sample_clipped_normal(0.37, 0.0, 100, rng)) EXPECT_EQ(v, 0.37);
}

TEST(ClippedNormal, MomentsWithoutClipping) {
  Rng rng(2);
  const auto xs = sample_clipped_normal(0.5, 0.1, 100000, rng);
  EXPECT_NEAR(mean(xs), 0.5, 0.01);
  EXPECT_NEAR(pop_sd(xs), 0.1, 0.01);
  for (double v : xs) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(ClippedNormal, ClippingBiasesMeanUp) {
  Rng rng(3);
  const auto xs = sample_clipped_normal(0.02, 0.15, 100000, rng);
  EXPECT_GT(mean(xs), 0.02);
  // Oracle: E[max(0, X)] for X ~ N(mu, s) is mu Phi(mu/s) + s phi(mu/s).
  const double z = 0.02 / 0.15;
  const double phi = std::exp(-0.5 * z * z) / std::sqrt(2 * M_PI);
  const double Phi = 0.5 * std::erfc(-z / std::sqrt(2.0));
  EXPECT_NEAR(mean(xs), 0.02 * Phi + 0.15 * phi, 0.002);
}

TEST(BlueDegree, Derivation) {
  EXPECT_NEAR(derive_blue_degree(10000, 5000, 100, 0.4, 0.3), 600.0 / 7.0, 1e-9);
  EXPECT_DOUBLE_EQ(derive_blue_degree(100, 50, 20, 0.35, 0.35), 20.0);
  EXPECT_DOUBLE_EQ(derive_blue_degree(100, 50, 20, 1.0, 0.2), 0.0);
  EXPECT_THROW(derive_blue_degree(100, 50, 20, 0.5, 1.0), InputError);
  EXPECT_THROW(derive_blue_degree(100, 100, 20, 0.5, 0.5), InputError);
}

TEST(StubCounts, RoundHalfUp) {
  EXPECT_EQ(same_stub_target(0.5, 3), 2u);
  EXPECT_EQ(same_stub_target(0.25, 2), 1u);
  EXPECT_EQ(same_stub_target(0.0, 5), 0u);
  EXPECT_EQ(same_stub_target(1.0, 5), 5u);
}

TEST(StubCounts, NoRepairWhenEven) {
  Rng rng(4);
  const std::vector<double> h = {0.5, 0.5};
  const StubPlan plan = stub_counts(h, 2, rng);
  EXPECT_EQ(plan.same, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(plan.cross, (std::vector<std::size_t>{1, 1}));
  EXPECT_TRUE(plan.repair_log.empty());
}

TEST(StubCounts, HalfOfThreeRoundsUpWithoutRepair) {
  // round-half-up(1.5) = 2 is already even.
  Rng rng(5);
  const std::vector<double> h = {0.5};
  const StubPlan plan = stub_counts(h, 3, rng);
  EXPECT_EQ(plan.same[0] + plan.cross[0], 3u);
  EXPECT_EQ(plan.same[0], 2u);
  EXPECT_TRUE(plan.repair_log.empty());
}

TEST(StubCounts, OddTotalRepairedOnce) {
  Rng rng(6);
  const std::vector<double> h = {0.5};
  const StubPlan plan = stub_counts(h, 1, rng);
  ASSERT_EQ(plan.repair_log.size(), 1u);
  EXPECT_EQ(plan.same_total() % 2, 0u);
  expect_plan_invariants(plan, 1);
}

TEST(StubCounts, RandomInvariantsAndDegreeZero) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(s);
    const std::size_t d = 1 + s % 13;
    const auto h = sample_clipped_normal(0.5, 0.3, 1 + s % 31, rng);
    const StubPlan plan = stub_counts(h, d, rng);
    expect_plan_invariants(plan, d);
    EXPECT_LE(plan.repair_log.size(), 1u);
  }
  Rng rng(0);
  const std::vector<double> h = {0.5};
  EXPECT_THROW(stub_counts(h, 0, rng), InputError);
}

TEST(StubCounts, ConstantHomophilyIdenticalNodes) {
  Rng rng(8);
  const std::vector<double> h(10, 0.25);
  const StubPlan plan = stub_counts(h, 4, rng);
  for (std::size_t s : plan.same) EXPECT_EQ(s, 1u);
  EXPECT_TRUE(plan.repair_log.empty());
}

TEST(ConfigModel, SpecValidation) {
  ConfigModelSpec s = fig4a(0.05);
  EXPECT_NO_THROW(s.validate());
  EXPECT_EQ(s.blue_degree(), 86u);
  s.k = s.n;
  EXPECT_THROW(s.validate(), InputError);
  s = fig4a(-0.1);
  EXPECT_THROW(s.validate(), InputError);
  s = fig4a(0.05);
  s.d = 0;
  EXPECT_THROW(s.validate(), InputError);
}

TEST(ConfigModel, BipartiteWhenNoSameStubs) {
  ConfigModelSpec s;
  s.n = 200;
  s.k = 100;
  s.d = 6;
  s.c = 6;
  s.seed = 5;
  const GeneratedGraph g = double_configuration_model(s);
  EXPECT_EQ(count_edges_between(g.graph, NodeColor::Red, NodeColor::Red), 0u);
  EXPECT_EQ(count_edges_between(g.graph, NodeColor::Blue, NodeColor::Blue), 0u);
  EXPECT_TRUE(validate(g.graph).ok());
  const HomophilyProfile p = first_order_homophily(g.graph);
  for (NodeIndex i = 0; i < g.graph.node_count(); ++i)
    if (p.defined(i)) {
      EXPECT_EQ(*p.h(i), 0);
    }
}

TEST(ConfigModel, DeterministicGivenSeed) {
  ConfigModelSpec s;
  s.n = 500;
  s.k = 200;
  s.d = 12;
  s.lambda_red = 0.6;
  s.sigma_red = 0.1;
  s.lambda_blue = 0.5;
  s.sigma_blue = 0.2;
  s.seed = 99;
  const GeneratedGraph a = double_configuration_model(s);
  const GeneratedGraph b = double_configuration_model(s);
  EXPECT_EQ(a.graph, b.graph);
  s.seed = 100;
  EXPECT_NE(double_configuration_model(s).graph, a.graph);
}

TEST(ConfigModel, SmallSpecsAreValidAndBalanced) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    ConfigModelSpec s;
    s.n = 60 + seed;
    s.k = 20 + seed % 20;
    s.d = 3 + seed % 7;
    s.lambda_red = 0.2 + 0.015 * seed;
    s.sigma_red = 0.1;
    s.lambda_blue = 0.5;
    s.sigma_blue = 0.05 * (seed % 4);
    s.seed = seed;
    s.max_rewire_attempts = 2000;
    const GeneratedGraph g = double_configuration_model(s);
    EXPECT_TRUE(validate(g.graph).ok());
    const BalanceCheck b = balance_check(g.graph, first_order_homophily(g.graph));
    EXPECT_TRUE(b.holds);
    EXPECT_EQ(b.lhs, Rational(static_cast<long>(count_edges_between(g.graph, NodeColor::Red, NodeColor::Blue))));
    // Degrees are exact up to logged erasures.
    std::size_t deficit = 0;
    for (NodeIndex i = 0; i < g.graph.node_count(); ++i) {
      const std::size_t want = g.graph.color(i) == NodeColor::Red ? s.d : g.blue_degree;
      ASSERT_LE(g.graph.degree(i), want);
      deficit += want - g.graph.degree(i);
    }
    EXPECT_EQ(deficit, 2 * g.log.erased_edges + g.log.erased_stubs);
    if (deficit > 0) {
      EXPECT_FALSE(g.log.warnings.empty());
    }
  }
}

TEST(ConfigModel, Figure4aScaleMatchesTargets) {
  const GeneratedGraph g = double_configuration_model(fig4a(0.05));
  EXPECT_EQ(g.blue_degree, 86u);
  const HomophilyProfile p(g.graph, Backend::Float);
  EXPECT_NEAR(p.stats(NodeColor::Red).lambda_approx, 0.4, 0.005);
  EXPECT_NEAR(p.stats(NodeColor::Red).sigma, 0.05, 0.01);
  EXPECT_LT(static_cast<double>(g.log.erased_edges), 0.01 * g.graph.edge_count());
  EXPECT_LE(g.mean_abs_delta_red, 1.0 / (2 * 100) + 0.01);
  EXPECT_TRUE(balance_check(g.graph, first_order_homophily(g.graph)).holds);
}

TEST(SpecialCase, SmallCycleAndBalance) {
  Rng rng(1);
  const std::vector<double> h = {0.5, 0.5};
  const TypedGraph g = special_case_graph(4, 2, 2, 2, 0.5, h, rng);
  for (NodeIndex i = 0; i < 4; ++i) EXPECT_EQ(g.degree(i), 2u);
  EXPECT_TRUE(balance_check(g, first_order_homophily(g)).holds);
}

TEST(SpecialCase, UniformBlueSide) {
  Rng rng(2);
  const std::vector<double> h = {0.25, 0.5, 0.75, 0.5, 0.25, 0.75, 0.5, 0.5, 0.25, 0.75};
  const TypedGraph g = special_case_graph(20, 10, 4, 4, 0.5, h, rng);
  const HomophilyProfile p = first_order_homophily(g);
  for (NodeIndex i = 0; i < 20; ++i) {
    EXPECT_EQ(g.degree(i), 4u);
    if (g.color(i) == NodeColor::Blue) {
      EXPECT_EQ(*p.h(i), ratio(1, 2));
    }
  }
  EXPECT_TRUE(balance_check(g, p).holds);
}

TEST(SpecialCase, Infeasible) {
  Rng rng(3);
  const std::vector<double> h = {0.5, 0.5};
  EXPECT_THROW(special_case_graph(4, 2, 2, 2, 0.5, std::vector<double>{0.5}, rng), InputError);
  EXPECT_THROW(special_case_graph(10, 2, 1, 5, 0.0, h, rng), InputError);
}
