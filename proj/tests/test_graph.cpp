#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "homophily/generators.hpp"
#include "homophily/io.hpp"

using namespace homophily;
using homophily::fixture::f1;

namespace {

const std::map<std::string, NodeColor> kLabels = {{"R", NodeColor::Red}, {"B", NodeColor::Blue}};

std::vector<NodeIndex> nbrs(const TypedGraph& g, NodeIndex i) {
  auto s = g.neighbors(i);
  return {s.begin(), s.end()};
}

}  // namespace

TEST(BuildGraph, F1DegreesAndNeighbors) {
  const TypedGraph g = f1();
  ASSERT_EQ(g.node_count(), 4u);
  EXPECT_EQ(g.edge_count(), 5u);
  EXPECT_EQ(g.degree(0), 3u);
  EXPECT_EQ(g.degree(1), 2u);
  EXPECT_EQ(g.degree(2), 3u);
  EXPECT_EQ(g.degree(3), 2u);
  EXPECT_EQ(nbrs(g, 0), (std::vector<NodeIndex>{1, 2, 3}));
  EXPECT_EQ(nbrs(g, 1), (std::vector<NodeIndex>{0, 2}));
  EXPECT_EQ(g.id(2), "3");
  EXPECT_EQ(g.color(2), NodeColor::Blue);
}

TEST(BuildGraph, SelfLoopAndDuplicate) {
  const std::vector<std::pair<std::string, std::string>> edges = {{"a", "a"}, {"a", "b"}, {"a", "b"}};
  const std::vector<std::pair<std::string, std::string>> attrs = {{"a", "R"}, {"b", "B"}};
  const BuildResult r = build_graph(edges, attrs, kLabels);
  EXPECT_EQ(r.graph.node_count(), 2u);
  EXPECT_EQ(r.graph.edge_count(), 1u);
  EXPECT_EQ(r.report.self_loops_removed, 1u);
  EXPECT_EQ(r.report.duplicate_edges_collapsed, 1u);
}

TEST(BuildGraph, UnlabeledEndpointDropped) {
  const std::vector<std::pair<std::string, std::string>> edges = {{"x", "y"}};
  const std::vector<std::pair<std::string, std::string>> attrs = {{"x", "R"}};
  const BuildResult r = build_graph(edges, attrs, kLabels);
  EXPECT_EQ(r.graph.node_count(), 1u);
  EXPECT_EQ(r.graph.edge_count(), 0u);
  EXPECT_EQ(r.report.unlabeled_nodes_dropped, 1u);
  EXPECT_EQ(r.report.isolated_nodes, 1u);
}

TEST(BuildGraph, EmptyLabelMeansUnlabeled) {
  const std::vector<std::pair<std::string, std::string>> edges = {{"x", "y"}, {"x", "z"}};
  const std::vector<std::pair<std::string, std::string>> attrs = {{"x", "R"}, {"y", ""}, {"z", "B"}};
  const BuildResult r = build_graph(edges, attrs, kLabels);
  EXPECT_EQ(r.graph.node_count(), 2u);
  EXPECT_EQ(r.report.unlabeled_nodes_dropped, 1u);
}

TEST(BuildGraph, Errors) {
  const std::vector<std::pair<std::string, std::string>> edges = {{"x", "y"}};
  EXPECT_THROW(build_graph(edges, std::vector<std::pair<std::string, std::string>>{{"x", "Q"}}, kLabels),
               InputError);
  EXPECT_THROW(build_graph(edges, std::vector<std::pair<std::string, std::string>>{}, kLabels), InputError);
  EXPECT_THROW(build_graph(std::vector<std::pair<std::string, std::string>>{{"", "y"}},
                           std::vector<std::pair<std::string, std::string>>{{"y", "R"}}, kLabels),
               InputError);
  EXPECT_THROW(build_graph(edges, std::vector<std::pair<std::string, std::string>>{{"x", "R"}, {"x", "B"}}, kLabels),
               InputError);
}

TEST(BuildGraph, Deterministic) {
  const std::vector<std::pair<std::string, std::string>> edges = {{"q", "p"}, {"p", "r"}, {"r", "q"}};
  const std::vector<std::pair<std::string, std::string>> attrs = {{"p", "R"}, {"q", "B"}, {"r", "R"}};
  const BuildResult a = build_graph(edges, attrs, kLabels);
  const BuildResult b = build_graph(edges, attrs, kLabels);
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_EQ(a.graph.id(0), "q");
  EXPECT_EQ(a.graph.id(1), "p");
}

TEST(Neighbors, OutOfRangeThrows) {
  EXPECT_THROW(f1().neighbors(4), std::out_of_range);
}

TEST(CountEdgesBetween, F1) {
  const TypedGraph g = f1();
  EXPECT_EQ(count_edges_between(g, NodeColor::Red, NodeColor::Red), 1u);
  EXPECT_EQ(count_edges_between(g, NodeColor::Red, NodeColor::Blue), 3u);
  EXPECT_EQ(count_edges_between(g, NodeColor::Blue, NodeColor::Red), 3u);
  EXPECT_EQ(count_edges_between(g, NodeColor::Blue, NodeColor::Blue), 1u);
}

TEST(Validate, CleanAndBroken) {
  EXPECT_TRUE(validate(f1()).ok());
  EXPECT_EQ(validate(f1()).isolated_nodes, 0u);

  const TypedGraph asym = TypedGraph::unchecked(fixture::numbered_ids(2), {NodeColor::Red, NodeColor::Blue}, {{1}, {}});
  const ValidationReport r = validate(asym);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.isolated_nodes, 1u);

  const TypedGraph loop = TypedGraph::unchecked(fixture::numbered_ids(1), {NodeColor::Red}, {{0}});
  EXPECT_FALSE(validate(loop).ok());

  const TypedGraph dup = TypedGraph::unchecked(fixture::numbered_ids(2), {NodeColor::Red, NodeColor::Red}, {{1, 1}, {0, 0}});
  EXPECT_FALSE(validate(dup).ok());
}

TEST(GraphProperties, RandomGraphs) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(s);
    const TypedGraph g = random_typed_graph(5 + s % 60, 0.4, 0.15, 0.1, rng);
    std::size_t degree_sum = 0;
    for (NodeIndex i = 0; i < g.node_count(); ++i) degree_sum += g.degree(i);
    EXPECT_EQ(degree_sum, 2 * g.edge_count());
    EXPECT_EQ(count_edges_between(g, NodeColor::Red, NodeColor::Red) +
                  count_edges_between(g, NodeColor::Red, NodeColor::Blue) +
                  count_edges_between(g, NodeColor::Blue, NodeColor::Blue),
              g.edge_count());
    EXPECT_TRUE(validate(g).ok());
  }
}

TEST(InducedSubgraph, KeepsIdsAndEdges) {
  const TypedGraph g = f1();
  const TypedGraph sub = g.induced_subgraph({true, false, true, true});
  ASSERT_EQ(sub.node_count(), 3u);
  EXPECT_EQ(sub.id(1), "3");
  EXPECT_EQ(sub.edge_count(), 3u);
  EXPECT_TRUE(validate(sub).ok());
}

TEST(Io, ParseEdgeList) {
  std::istringstream in("# comment\n1 2\n\n2\t3\n");
  const auto edges = io::parse_edge_list(in);
  ASSERT_EQ(edges.size(), 2u);
  EXPECT_EQ(edges[1], (std::pair<std::string, std::string>{"2", "3"}));
  std::istringstream bad("1 2 3\n");
  EXPECT_THROW(io::parse_edge_list(bad), InputError);
}

TEST(Io, ParseAttributes) {
  std::istringstream in("node_id,type\n1,R\n2,\n");
  const auto attrs = io::parse_attributes(in);
  ASSERT_EQ(attrs.size(), 2u);
  EXPECT_EQ(attrs[1].second, "");
  std::istringstream bad("id,kind\n1,R\n");
  EXPECT_THROW(io::parse_attributes(bad), InputError);
}

TEST(Io, RoundTrip) {
  const TypedGraph g = f1();
  std::ostringstream e, a;
  io::write_edge_list(g, e);
  io::write_attributes(g, {}, a);
  std::istringstream ei(e.str()), ai(a.str());
  const auto edges = io::parse_edge_list(ei);
  const auto attrs = io::parse_attributes(ai);
  EXPECT_EQ(build_graph(edges, attrs, kLabels).graph, g);
}
