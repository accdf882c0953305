#pragma once

#include <string>
#include <utility>
#include <vector>

#include "homophily/graph.hpp"

namespace homophily::fixture {

inline TypedGraph graph_from(const std::vector<std::pair<std::string, std::string>>& edges,
                             const std::vector<std::pair<std::string, std::string>>& labels) {
  return build_graph(edges, labels, {{"R", NodeColor::Red}, {"B", NodeColor::Blue}}).graph;
}

// Nodes 1,2 red and 3,4 blue; h = (1/3, 1/2, 1/3, 1/2).
inline TypedGraph f1() {
  return graph_from({{"1", "2"}, {"1", "3"}, {"1", "4"}, {"2", "3"}, {"3", "4"}},
                    {{"1", "R"}, {"2", "R"}, {"3", "B"}, {"4", "B"}});
}

// Red a, b of degree 2 and red hub c of degree 200 with 198 blue neighbors;
// a-b1 and b-b2 give a and b their blue neighbor.
inline TypedGraph f2() {
  std::vector<std::pair<std::string, std::string>> edges = {{"a", "c"}, {"b", "c"}, {"a", "b1"}, {"b", "b2"}};
  std::vector<std::pair<std::string, std::string>> labels = {{"a", "R"}, {"b", "R"}, {"c", "R"}};
  for (int i = 1; i <= 198; ++i) {
    const std::string id = "b" + std::to_string(i);
    edges.emplace_back("c", id);
    labels.emplace_back(id, "B");
  }
  return graph_from(edges, labels);
}

// r1-r2, r1-b1, b1-b2: pruning to both colors empties it.
inline TypedGraph chain() {
  return graph_from({{"r1", "r2"}, {"r1", "b1"}, {"b1", "b2"}},
                    {{"r1", "R"}, {"r2", "R"}, {"b1", "B"}, {"b2", "B"}});
}

inline TypedGraph star_k13() {
  return graph_from({{"0", "1"}, {"0", "2"}, {"0", "3"}}, {{"0", "R"}, {"1", "B"}, {"2", "B"}, {"3", "R"}});
}

inline TypedGraph red_triangle() {
  return graph_from({{"x", "y"}, {"y", "z"}, {"x", "z"}}, {{"x", "R"}, {"y", "R"}, {"z", "R"}});
}

inline std::vector<std::string> numbered_ids(std::size_t n) {
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = std::to_string(i);
  return ids;
}

}  // namespace homophily::fixture
