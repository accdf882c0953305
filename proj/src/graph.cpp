#include "homophily/graph.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace homophily {

namespace {

std::uint64_t edge_key(NodeIndex u, NodeIndex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

TypedGraph TypedGraph::from_index_edges(std::vector<std::string> ids, std::vector<NodeColor> colors,
                                        std::span<const std::pair<NodeIndex, NodeIndex>> edges) {
  if (ids.size() != colors.size())
    throw InvariantViolation("id and color vectors differ in length");
  const std::size_t n = colors.size();
  std::vector<std::vector<NodeIndex>> adjacency(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw InvariantViolation("edge endpoint out of range");
    if (u == v) throw InvariantViolation("self-loop on node " + ids[u]);
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }
  std::size_t degree_sum = 0;
  for (auto& list : adjacency) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    degree_sum += list.size();
  }
  TypedGraph g;
  g.ids_ = std::move(ids);
  g.colors_ = std::move(colors);
  g.adjacency_ = std::move(adjacency);
  g.edge_count_ = degree_sum / 2;
  return g;
}

TypedGraph TypedGraph::unchecked(std::vector<std::string> ids, std::vector<NodeColor> colors,
                                 std::vector<std::vector<NodeIndex>> adjacency) {
  TypedGraph g;
  std::size_t degree_sum = 0;
  for (const auto& list : adjacency) degree_sum += list.size();
  g.ids_ = std::move(ids);
  g.colors_ = std::move(colors);
  g.adjacency_ = std::move(adjacency);
  g.edge_count_ = degree_sum / 2;
  return g;
}

std::span<const NodeIndex> TypedGraph::neighbors(NodeIndex node) const {
  if (node >= adjacency_.size())
    throw std::out_of_range("node index " + std::to_string(node) + " out of range");
  return adjacency_[node];
}

NodeColor TypedGraph::color(NodeIndex node) const {
  if (node >= colors_.size())
    throw std::out_of_range("node index " + std::to_string(node) + " out of range");
  return colors_[node];
}

const std::string& TypedGraph::id(NodeIndex node) const {
  if (node >= ids_.size())
    throw std::out_of_range("node index " + std::to_string(node) + " out of range");
  return ids_[node];
}

std::size_t TypedGraph::color_count(NodeColor c) const {
  return static_cast<std::size_t>(std::count(colors_.begin(), colors_.end(), c));
}

std::vector<NodeIndex> TypedGraph::nodes_of(NodeColor c) const {
  std::vector<NodeIndex> out;
  for (NodeIndex i = 0; i < colors_.size(); ++i)
    if (colors_[i] == c) out.push_back(i);
  return out;
}

std::vector<std::pair<NodeIndex, NodeIndex>> TypedGraph::edges() const {
  std::vector<std::pair<NodeIndex, NodeIndex>> out;
  out.reserve(edge_count_);
  for (NodeIndex u = 0; u < adjacency_.size(); ++u)
    for (NodeIndex v : adjacency_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

TypedGraph TypedGraph::induced_subgraph(const std::vector<bool>& keep) const {
  if (keep.size() != node_count()) throw InvariantViolation("keep mask has wrong length");
  constexpr NodeIndex kDropped = ~NodeIndex{0};
  std::vector<NodeIndex> remap(node_count(), kDropped);
  std::vector<std::string> ids;
  std::vector<NodeColor> colors;
  for (NodeIndex i = 0; i < node_count(); ++i) {
    if (!keep[i]) continue;
    remap[i] = static_cast<NodeIndex>(ids.size());
    ids.push_back(ids_[i]);
    colors.push_back(colors_[i]);
  }
  std::vector<std::vector<NodeIndex>> adjacency(ids.size());
  std::size_t degree_sum = 0;
  for (NodeIndex i = 0; i < node_count(); ++i) {
    if (!keep[i]) continue;
    auto& list = adjacency[remap[i]];
    for (NodeIndex j : adjacency_[i])
      if (remap[j] != kDropped) list.push_back(remap[j]);  // stays sorted: remap is monotone
    degree_sum += list.size();
  }
  TypedGraph g;
  g.ids_ = std::move(ids);
  g.colors_ = std::move(colors);
  g.adjacency_ = std::move(adjacency);
  g.edge_count_ = degree_sum / 2;
  return g;
}

BuildResult build_graph(std::span<const std::pair<std::string, std::string>> edges,
                        std::span<const std::pair<std::string, std::string>> attributes,
                        const std::map<std::string, NodeColor>& label_map) {
  std::unordered_map<std::string, NodeColor> color_of;
  std::unordered_set<std::string> seen_attr;
  std::unordered_set<std::string> unlabeled;
  for (const auto& [id, label] : attributes) {
    if (id.empty()) throw InputError("attribute row with empty node id");
    if (!seen_attr.insert(id).second) throw InputError("node '" + id + "' listed twice in attributes");
    if (label.empty()) {
      unlabeled.insert(id);
      continue;
    }
    auto it = label_map.find(label);
    if (it == label_map.end())
      throw InputError("label '" + label + "' of node '" + id + "' is not mapped to a color");
    color_of.emplace(id, it->second);
  }

  ValidationReport report;
  std::unordered_map<std::string, NodeIndex> index_of;
  std::vector<std::string> ids;
  std::vector<NodeColor> colors;
  auto intern = [&](const std::string& id) -> bool {
    if (index_of.count(id)) return true;
    auto it = color_of.find(id);
    if (it == color_of.end()) {
      unlabeled.insert(id);
      return false;
    }
    index_of.emplace(id, static_cast<NodeIndex>(ids.size()));
    ids.push_back(id);
    colors.push_back(it->second);
    return true;
  };

  std::unordered_set<std::uint64_t> seen_edges;
  std::vector<std::pair<NodeIndex, NodeIndex>> kept;
  for (const auto& [a, b] : edges) {
    if (a.empty() || b.empty()) throw InputError("edge with empty endpoint id");
    const bool a_ok = intern(a);
    const bool b_ok = intern(b);
    if (a == b) {
      ++report.self_loops_removed;
      continue;
    }
    if (!a_ok || !b_ok) continue;
    const NodeIndex u = index_of.at(a);
    const NodeIndex v = index_of.at(b);
    if (!seen_edges.insert(edge_key(u, v)).second) {
      ++report.duplicate_edges_collapsed;
      continue;
    }
    kept.emplace_back(u, v);
  }
  for (const auto& [id, label] : attributes)
    if (!label.empty()) intern(id);

  report.unlabeled_nodes_dropped = unlabeled.size();
  if (ids.empty()) throw InputError("no labeled nodes remain after dropping unlabeled ones");

  BuildResult out{TypedGraph::from_index_edges(std::move(ids), std::move(colors), kept), report};
  for (NodeIndex i = 0; i < out.graph.node_count(); ++i)
    if (out.graph.degree(i) == 0) ++out.report.isolated_nodes;
  return out;
}

std::size_t count_edges_between(const TypedGraph& graph, NodeColor a, NodeColor b) {
  std::size_t endpoint_hits = 0;
  for (NodeIndex u = 0; u < graph.node_count(); ++u) {
    if (graph.color(u) != a) continue;
    for (NodeIndex v : graph.neighbors(u))
      if (graph.color(v) == b) ++endpoint_hits;
  }
  // Same-color edges are seen from both ends.
  return a == b ? endpoint_hits / 2 : endpoint_hits;
}

ValidationReport validate(const TypedGraph& graph) {
  ValidationReport report;
  const std::size_t n = graph.node_count();
  if (graph.ids().size() != n) report.violations.push_back("id table size differs from node count");
  for (NodeIndex u = 0; u < n; ++u) {
    const auto nbrs = graph.neighbors(u);
    if (nbrs.empty()) ++report.isolated_nodes;
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const NodeIndex v = nbrs[k];
      if (v >= n) {
        report.violations.push_back("node " + graph.id(u) + " lists out-of-range neighbor");
        continue;
      }
      if (v == u) {
        ++report.self_loops_removed;
        report.violations.push_back("self-loop on node " + graph.id(u));
      }
      if (k > 0 && nbrs[k - 1] == v) {
        ++report.duplicate_edges_collapsed;
        report.violations.push_back("duplicate neighbor " + graph.id(v) + " of node " + graph.id(u));
      } else if (k > 0 && nbrs[k - 1] > v) {
        report.violations.push_back("neighbors of node " + graph.id(u) + " are not sorted");
      }
      const auto back = graph.neighbors(v);
      if (!std::binary_search(back.begin(), back.end(), u) &&
          std::find(back.begin(), back.end(), u) == back.end())
        report.violations.push_back("asymmetric adjacency: " + graph.id(u) + " -> " + graph.id(v));
    }
  }
  return report;
}

}  // namespace homophily
