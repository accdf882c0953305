#pragma once

#include <set>
#include <string>
#include <vector>

#include "homophily/graph.hpp"

namespace homophily {

struct PruneResult {
  TypedGraph graph;
  // Cycles run, including the final pass that found nothing to remove.
  std::size_t passes = 0;
  std::vector<std::string> removed_nodes;  // in removal order, index order within a pass
  double retained_fraction = 1.0;
};

/// Repeatedly removes, all at once, every node lacking a neighbor of some
/// required color, until a pass removes nothing. The result is the maximal
/// induced subgraph in which each node has a neighbor of every required color.
/// An already compliant graph reports passes == 1.
PruneResult prune_bichromatic(const TypedGraph& graph, const std::set<NodeColor>& required);

struct RetentionStats {
  double labeled_fraction = 1.0;
  double retained_fraction = 1.0;
};

/// labeled_fraction = nodes kept at ingestion / (kept + unlabeled dropped);
/// retained_fraction = nodes surviving pruning / nodes before pruning.
/// Throws InputError when `before` is empty.
RetentionStats retention_stats(const TypedGraph& before, const PruneResult& after,
                               const ValidationReport& ingestion = {});

}  // namespace homophily
