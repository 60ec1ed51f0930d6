#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "netanon/graph.hpp"

namespace netanon {

// Edge-list text format: one edge per line, first two whitespace-separated
// tokens are endpoints; extra columns (weights, timestamps) are ignored.
// Lines starting with '#' or '%' and blank lines are skipped. A line with a
// single token is a parse error (with line number).
LabeledGraph parse_edge_list(std::istream& in);

LabeledGraph load_edge_list(const std::filesystem::path& path);

void write_edge_list(const Graph& g, const std::filesystem::path& path);

}  // namespace netanon
