#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "homophily/generators.hpp"
#include "homophily/graph.hpp"

namespace homophily {

/// Tallies of exact-arithmetic checks of the list-version gap theorem.
struct TheoremCheckSummary {
  std::size_t graphs = 0;
  std::size_t graphs_passed = 0;
  std::size_t positive_gap_checks = 0;  // sigma_C > 0  =>  g^(C) > 0
  std::size_t zero_gap_checks = 0;      // sigma_C = 0 with both edge kinds  =>  g^(C) = 0
  std::size_t balance_checks = 0;
  std::size_t equivalence_checks = 0;   // closed forms == concatenated-list means
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Runs every check on one graph and folds the outcome into `summary`.
void check_gap_theorem(const TypedGraph& graph, const std::string& label, TheoremCheckSummary& summary);

/// Random graph from a rotating set of regimes: homophilous, heterophilous
/// and neutral Erdos-Renyi, bipartite (no same-color edges), mostly one
/// color, sparse with isolated nodes, and constant-homophily rings.
/// Node counts lie in [10, 500], log-uniform for the random regimes.
TypedGraph theorem_test_graph(std::size_t index, Rng& rng);

/// `count` graphs from theorem_test_graph, stream i seeded by
/// derive_stream_seed(seed, i).
TheoremCheckSummary verify_random_graphs(std::size_t count, std::uint64_t seed);

}  // namespace homophily
