#include "homophily/prune.hpp"

namespace homophily {

PruneResult prune_bichromatic(const TypedGraph& graph, const std::set<NodeColor>& required) {
  const std::size_t n = graph.node_count();
  std::vector<bool> alive(n, true);
  PruneResult out;

  // Alive neighbor counts per color; kept incrementally as nodes disappear.
  std::vector<std::size_t> count[2];
  count[0].assign(n, 0);
  count[1].assign(n, 0);
  for (NodeIndex i = 0; i < n; ++i)
    for (NodeIndex j : graph.neighbors(i)) ++count[static_cast<int>(graph.color(j))][i];

  auto compliant = [&](NodeIndex i) {
    for (NodeColor c : required)
      if (count[static_cast<int>(c)][i] == 0) return false;
    return true;
  };

  std::vector<NodeIndex> doomed;
  while (true) {
    ++out.passes;
    doomed.clear();
    for (NodeIndex i = 0; i < n; ++i)
      if (alive[i] && !compliant(i)) doomed.push_back(i);
    if (doomed.empty()) break;
    for (NodeIndex i : doomed) alive[i] = false;
    for (NodeIndex i : doomed) {
      out.removed_nodes.push_back(graph.id(i));
      const int c = static_cast<int>(graph.color(i));
      for (NodeIndex j : graph.neighbors(i)) --count[c][j];
    }
  }

  out.graph = graph.induced_subgraph(alive);
  out.retained_fraction =
      n == 0 ? 1.0 : static_cast<double>(out.graph.node_count()) / static_cast<double>(n);
  return out;
}

RetentionStats retention_stats(const TypedGraph& before, const PruneResult& after,
                               const ValidationReport& ingestion) {
  if (before.node_count() == 0) throw InputError("retention of an empty graph is undefined");
  if (after.graph.node_count() > before.node_count())
    throw std::invalid_argument("pruned graph is larger than its source");
  RetentionStats s;
  const double kept = static_cast<double>(before.node_count());
  s.labeled_fraction = kept / (kept + static_cast<double>(ingestion.unlabeled_nodes_dropped));
  s.retained_fraction = static_cast<double>(after.graph.node_count()) / kept;
  return s;
}

}  // namespace homophily
