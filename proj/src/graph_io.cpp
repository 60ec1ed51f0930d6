#include "netanon/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "netanon/error.hpp"

namespace netanon {

LabeledGraph parse_edge_list(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#' || line[start] == '%') continue;
    std::istringstream tokens(line);
    std::string a, b;
    tokens >> a;
    if (!(tokens >> b))
      throw ParseError("expected two node tokens, got one", lineno);
    pairs.emplace_back(std::move(a), std::move(b));
  }
  return build_graph(pairs);
}

LabeledGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list: " + path.string());
  return parse_edge_list(in);
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write edge list: " + path.string());
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace netanon
