#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace homophily {

/// Raised for malformed or unusable user input (files, labels, parameters).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal guarantee is broken, e.g. a theorem check fails.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class NodeColor : std::uint8_t { Red = 0, Blue = 1 };

inline constexpr NodeColor other(NodeColor c) {
  return c == NodeColor::Red ? NodeColor::Blue : NodeColor::Red;
}

inline const char* color_name(NodeColor c) {
  return c == NodeColor::Red ? "red" : "blue";
}

using NodeIndex = std::uint32_t;

struct ValidationReport {
  std::size_t self_loops_removed = 0;
  std::size_t duplicate_edges_collapsed = 0;
  std::size_t unlabeled_nodes_dropped = 0;
  std::size_t isolated_nodes = 0;
  // Filled only by validate(): descriptions of broken invariants.
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Immutable simple undirected graph with a red/blue color on every node.
///
/// Nodes are dense indices 0..n-1; each keeps the external string id it was
/// read with. Adjacency lists are sorted and duplicate free.
class TypedGraph {
 public:
  TypedGraph() = default;

  /// Builds from index edges. Edges are symmetrized, sorted and deduplicated;
  /// self-loops are rejected with InvariantViolation.
  static TypedGraph from_index_edges(std::vector<std::string> ids,
                                     std::vector<NodeColor> colors,
                                     std::span<const std::pair<NodeIndex, NodeIndex>> edges);

  /// Wraps adjacency lists as given, without checking anything. Intended for
  /// tests that need to hand validate() a broken graph.
  static TypedGraph unchecked(std::vector<std::string> ids, std::vector<NodeColor> colors,
                              std::vector<std::vector<NodeIndex>> adjacency);

  std::size_t node_count() const { return colors_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const NodeIndex> neighbors(NodeIndex node) const;
  std::size_t degree(NodeIndex node) const { return neighbors(node).size(); }
  NodeColor color(NodeIndex node) const;
  const std::string& id(NodeIndex node) const;

  std::span<const NodeColor> colors() const { return colors_; }
  std::span<const std::string> ids() const { return ids_; }

  /// Number of nodes with the given color.
  std::size_t color_count(NodeColor c) const;

  /// Node indices in increasing order whose color is c.
  std::vector<NodeIndex> nodes_of(NodeColor c) const;

  /// Each undirected edge once, as (lower index, higher index), sorted.
  std::vector<std::pair<NodeIndex, NodeIndex>> edges() const;

  /// Subgraph on the kept nodes, preserving relative index order and ids.
  TypedGraph induced_subgraph(const std::vector<bool>& keep) const;

  bool operator==(const TypedGraph&) const = default;

 private:
  std::vector<std::string> ids_;
  std::vector<NodeColor> colors_;
  std::vector<std::vector<NodeIndex>> adjacency_;
  std::size_t edge_count_ = 0;
};

struct BuildResult {
  TypedGraph graph;
  ValidationReport report;
};

/// Assembles a TypedGraph from raw string edges and (id, label) attribute rows.
///
/// Node indices follow first appearance in the edge list; labeled nodes that
/// only appear in the attribute rows are appended afterwards in row order.
/// Self-loops are dropped, duplicates collapsed, and nodes without a label
/// (no row or an empty label) are removed together with their edges.
/// Throws InputError for an unknown label, an empty node id, a node listed
/// twice in the attributes, or when no labeled node remains.
BuildResult build_graph(std::span<const std::pair<std::string, std::string>> edges,
                        std::span<const std::pair<std::string, std::string>> attributes,
                        const std::map<std::string, NodeColor>& label_map);

/// |E(a, b)|. For a == b every edge is counted once.
std::size_t count_edges_between(const TypedGraph& graph, NodeColor a, NodeColor b);

/// Re-checks symmetry, sortedness, absence of self-loops and duplicates.
ValidationReport validate(const TypedGraph& graph);

}  // namespace homophily
