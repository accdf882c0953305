#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "homophily/generators.hpp"
#include "homophily/metrics.hpp"
#include "homophily/verify.hpp"
#include "oracle.hpp"

using namespace homophily;
using homophily::fixture::Oracle;
using homophily::fixture::sgn;

namespace {

bool every_node_has_red_neighbor(const TypedGraph& g) {
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    bool found = false;
    for (NodeIndex j : g.neighbors(i)) found = found || g.color(j) == NodeColor::Red;
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST(GapTheorem, PairwiseOracleAgreesOnRandomGraphs) {
  std::size_t positive = 0, zero = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    Rng rng(derive_stream_seed(99, i));
    const TypedGraph g = theorem_test_graph(i, rng);
    const Oracle o(g);
    const HomophilyProfile p = first_order_homophily(g);
    const GapReport r = gap_report(g, p, Backend::Exact, SingularPolicy::Relaxed);
    for (NodeColor c : {NodeColor::Red, NodeColor::Blue}) {
      const mpq_class pair = o.pairwise(c);
      const bool diverse = o.variance(c) && *o.variance(c) > 0;
      ASSERT_EQ(sgn(pair) > 0, diverse) << "graph " << i;
      ASSERT_EQ(p.stats(c).has_diversity(), diverse) << "graph " << i;
      const Quantity& gap = r.of(c).gap_list;
      if (diverse) {
        ASSERT_TRUE(gap.defined) << "graph " << i << ": " << gap.reason;
        ASSERT_GT(gap.sign(), 0) << "graph " << i;
        ++positive;
      }
      if (gap.defined) {
        ASSERT_EQ(gap.sign(), sgn(pair)) << "graph " << i;
        if (!diverse) ++zero;
      }
    }
  }
  EXPECT_GT(positive, 500u);
  EXPECT_GT(zero, 50u);
}

TEST(GapTheorem, VerifySummaryHasNoFailures) {
  const TheoremCheckSummary s = verify_random_graphs(300, 3);
  EXPECT_TRUE(s.ok()) << s.failures.front();
  EXPECT_EQ(s.graphs, 300u);
  EXPECT_EQ(s.graphs_passed, 300u);
  EXPECT_GT(s.zero_gap_checks, 0u);
}

TEST(GapTheorem, HeterophilousF2StillPositive) {
  const TypedGraph g = fixture::f2();
  const GapReport r = gap_report(g, first_order_homophily(g), Backend::Exact, SingularPolicy::Relaxed);
  EXPECT_GT(r.red.gap_list.sign(), 0);
}

TEST(GapTheorem, F1PassesAllChecks) {
  TheoremCheckSummary s;
  check_gap_theorem(fixture::f1(), "f1", s);
  EXPECT_TRUE(s.ok());
  EXPECT_EQ(s.positive_gap_checks, 2u);
  EXPECT_EQ(s.balance_checks, 1u);
}

TEST(SpecialCase, SingularOrderingHolds) {
  std::size_t checked = 0;
  for (std::uint64_t s = 0; s < 60; ++s) {
    Rng rng(derive_stream_seed(4242, s));
    const std::size_t k = 20, n = 40, d = 4, c = 4;
    std::uniform_int_distribution<int> same(1, 3);
    std::vector<double> h(k);
    for (auto& x : h) x = same(rng) / 4.0;
    TypedGraph g;
    try {
      g = special_case_graph(n, k, d, c, 0.5, h, rng);
    } catch (const GenerationError&) {
      continue;
    }
    const HomophilyProfile p = first_order_homophily(g);
    if (!p.stats(NodeColor::Red).has_diversity() || !every_node_has_red_neighbor(g)) continue;
    const GapReport r = gap_report(g, p, Backend::Exact, SingularPolicy::Strict);
    ASSERT_TRUE(r.red.sing_same.defined) << r.red.sing_same.reason;
    ASSERT_TRUE(r.red.sing_other.defined) << r.red.sing_other.reason;
    const Rational lambda = *p.stats(NodeColor::Red).lambda;
    EXPECT_GT(*r.red.sing_same.exact, lambda);
    EXPECT_GE(lambda, *r.red.sing_other.exact);
    EXPECT_GT(r.red.gap_sing.sign(), 0);
    ++checked;
  }
  EXPECT_GT(checked, 40u);
}

TEST(SpecialCase, ZeroDiversityGivesZeroGap) {
  Rng rng(5);
  const std::vector<double> h = {0.5, 0.5};
  const TypedGraph g = special_case_graph(4, 2, 2, 2, 0.5, h, rng);
  const GapReport r = gap_report(g, first_order_homophily(g), Backend::Exact);
  ASSERT_TRUE(r.red.gap_list.defined);
  EXPECT_EQ(r.red.gap_list.sign(), 0);
}
