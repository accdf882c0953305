#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "homophily/graph.hpp"

namespace homophily::io {

using StringPairs = std::vector<std::pair<std::string, std::string>>;

// Edge list: one edge per line, two whitespace-separated ids; blank lines and
// lines starting with '#' are skipped.
StringPairs parse_edge_list(std::istream& in);
StringPairs read_edge_list(const std::filesystem::path& path);

// Attribute CSV with header `node_id,type`. An empty type field is kept as an
// empty label (meaning unlabeled).
StringPairs parse_attributes(std::istream& in);
StringPairs read_attributes(const std::filesystem::path& path);

struct LabelNames {
  std::string red = "R";
  std::string blue = "B";
};

void write_edge_list(const TypedGraph& graph, std::ostream& out);
void write_attributes(const TypedGraph& graph, const LabelNames& labels, std::ostream& out);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

/// Reads both files and builds the graph with the given label mapping.
BuildResult load_graph(const std::filesystem::path& edges, const std::filesystem::path& attributes,
                       const LabelNames& labels);

}  // namespace homophily::io
