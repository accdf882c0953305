#include "homophily/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace homophily::io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

}  // namespace

StringPairs parse_edge_list(std::istream& in) {
  StringPairs edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::istringstream fields(t);
    std::string a, b, extra;
    if (!(fields >> a >> b) || (fields >> extra))
      throw InputError("edge list line " + std::to_string(line_no) + ": expected two node ids");
    edges.emplace_back(std::move(a), std::move(b));
  }
  return edges;
}

StringPairs read_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_edge_list(in);
}

StringPairs parse_attributes(std::istream& in) {
  StringPairs rows;
  std::string line;
  if (!std::getline(in, line) || trim(line) != "node_id,type")
    throw InputError("attribute file must start with header 'node_id,type'");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos)
      throw InputError("attribute line " + std::to_string(line_no) + ": expected 'node_id,type'");
    std::string id = trim(t.substr(0, comma));
    if (id.empty()) throw InputError("attribute line " + std::to_string(line_no) + ": empty node id");
    rows.emplace_back(std::move(id), trim(t.substr(comma + 1)));
  }
  return rows;
}

StringPairs read_attributes(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_attributes(in);
}

void write_edge_list(const TypedGraph& graph, std::ostream& out) {
  for (const auto& [u, v] : graph.edges()) out << graph.id(u) << ' ' << graph.id(v) << '\n';
}

void write_attributes(const TypedGraph& graph, const LabelNames& labels, std::ostream& out) {
  out << "node_id,type\n";
  for (NodeIndex i = 0; i < graph.node_count(); ++i)
    out << graph.id(i) << ',' << (graph.color(i) == NodeColor::Red ? labels.red : labels.blue) << '\n';
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << contents;
  if (!out) throw InputError("failed writing " + path.string());
}

BuildResult load_graph(const std::filesystem::path& edges, const std::filesystem::path& attributes,
                       const LabelNames& labels) {
  if (labels.red == labels.blue) throw InputError("red and blue labels must differ");
  const auto edge_rows = read_edge_list(edges);
  const auto attr_rows = read_attributes(attributes);
  const std::map<std::string, NodeColor> label_map{{labels.red, NodeColor::Red},
                                                   {labels.blue, NodeColor::Blue}};
  return build_graph(edge_rows, attr_rows, label_map);
}

}  // namespace homophily::io
