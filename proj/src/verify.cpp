#include "homophily/verify.hpp"

#include <cmath>

#include "homophily/metrics.hpp"

namespace homophily {

namespace {

std::optional<Rational> mean_of(const std::vector<Rational>& values) {
  if (values.empty()) return std::nullopt;
  Rational sum = 0;
  for (const auto& v : values) sum += v;
  Rational mean = sum / Rational(static_cast<unsigned long>(values.size()));
  mean.canonicalize();
  return mean;
}

bool same_value(const Quantity& q, const std::optional<Rational>& expected) {
  if (!expected) return !q.defined;
  return q.defined && q.exact && *q.exact == *expected;
}

std::vector<std::string> numbered_ids(std::size_t n) {
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = std::to_string(i);
  return ids;
}

// Ring coloured RRBB RRBB ...: every node has one same and one cross neighbor.
TypedGraph striped_ring(std::size_t blocks) {
  const std::size_t n = 4 * blocks;
  std::vector<NodeColor> colors(n);
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    colors[i] = (i % 4) < 2 ? NodeColor::Red : NodeColor::Blue;
    edges.emplace_back(static_cast<NodeIndex>(i), static_cast<NodeIndex>((i + 1) % n));
  }
  return TypedGraph::from_index_edges(numbered_ids(n), std::move(colors), edges);
}

// K_{a,a} between the colors plus a perfect matching inside each color:
// every node has homophily 1/(a+1).
TypedGraph matched_biclique(std::size_t a) {
  const std::size_t n = 2 * a;
  std::vector<NodeColor> colors(n, NodeColor::Blue);
  std::fill(colors.begin(), colors.begin() + static_cast<std::ptrdiff_t>(a), NodeColor::Red);
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  for (NodeIndex r = 0; r < a; ++r)
    for (NodeIndex b = 0; b < a; ++b) edges.emplace_back(r, static_cast<NodeIndex>(a + b));
  for (NodeIndex i = 0; i + 1 < a; i += 2) {
    edges.emplace_back(i, i + 1);
    edges.emplace_back(static_cast<NodeIndex>(a + i), static_cast<NodeIndex>(a + i + 1));
  }
  return TypedGraph::from_index_edges(numbered_ids(n), std::move(colors), edges);
}

}  // namespace

void check_gap_theorem(const TypedGraph& graph, const std::string& label, TheoremCheckSummary& summary) {
  const std::size_t failures_before = summary.failures.size();
  auto fail = [&](const std::string& what) { summary.failures.push_back(label + ": " + what); };

  const HomophilyProfile profile(graph, Backend::Exact);
  const GapReport report = gap_report(graph, profile, Backend::Exact, SingularPolicy::Relaxed);

  for (NodeColor c : {NodeColor::Red, NodeColor::Blue}) {
    const ColorGaps& g = report.of(c);
    const std::string cname = color_name(c);
    if (profile.stats(c).has_diversity()) {
      ++summary.positive_gap_checks;
      if (!g.gap_list.defined)
        fail(cname + " gap undefined despite diversity: " + g.gap_list.reason);
      else if (g.gap_list.sign() <= 0)
        fail(cname + " gap " + to_fraction_string(*g.gap_list.exact) + " not positive despite sigma > 0");
    } else if (profile.stats(c).defined() && count_edges_between(graph, c, c) > 0 &&
               count_edges_between(graph, c, other(c)) > 0) {
      ++summary.zero_gap_checks;
      if (!g.gap_list.defined || g.gap_list.sign() != 0) fail(cname + " gap not zero with sigma = 0");
    }

    ++summary.equivalence_checks;
    const auto same = second_order_list(graph, profile, c, c);
    const auto cross = second_order_list(graph, profile, other(c), c);
    if (!same_value(g.list_same, mean_of(same.concatenated)) ||
        !same_value(g.list_other, mean_of(cross.concatenated)))
      fail(cname + " closed-form means differ from concatenated-list means");
  }

  ++summary.balance_checks;
  const BalanceCheck balance = balance_check(graph, profile);
  const Rational cross_edges(static_cast<unsigned long>(count_edges_between(graph, NodeColor::Red, NodeColor::Blue)));
  if (!balance.holds || balance.lhs != cross_edges) fail("balance identity broken");

  ++summary.graphs;
  if (summary.failures.size() == failures_before) ++summary.graphs_passed;
}

TypedGraph theorem_test_graph(std::size_t index, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto n = static_cast<std::size_t>(std::lround(10.0 * std::pow(50.0, unit(rng))));
  const double nd = static_cast<double>(n);
  const double mean_degree = 2.0 + 10.0 * unit(rng);
  const double p = std::min(1.0, mean_degree / nd);
  switch (index % 8) {
    case 0:  // homophilous
      return random_typed_graph(n, 0.2 + 0.6 * unit(rng), std::min(1.0, 3 * p), p / 3, rng);
    case 1:  // heterophilous
      return random_typed_graph(n, 0.2 + 0.6 * unit(rng), p / 4, std::min(1.0, 2 * p), rng);
    case 2:  // neutral
      return random_typed_graph(n, unit(rng), p, p, rng);
    case 3:  // bipartite: no same-color edges at all
      return random_typed_graph(n, 0.5, 0.0, std::min(1.0, 2 * p), rng);
    case 4:  // nearly monochromatic
      return random_typed_graph(n, 0.9 + 0.08 * unit(rng), p, p, rng);
    case 5:  // sparse, with isolated nodes
      return random_typed_graph(n, 0.5, 0.5 / nd, 0.5 / nd, rng);
    case 6:  // constant homophily 1/2
      return striped_ring(std::max<std::size_t>(3, n / 4));
    default:  // constant homophily 1/(a+1)
      return matched_biclique(5 + static_cast<std::size_t>(unit(rng) * 11.0));
  }
}

TheoremCheckSummary verify_random_graphs(std::size_t count, std::uint64_t seed) {
  TheoremCheckSummary summary;
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_stream_seed(seed, i));
    const TypedGraph graph = theorem_test_graph(i, rng);
    check_gap_theorem(graph, "graph " + std::to_string(i), summary);
  }
  return summary;
}

}  // namespace homophily
