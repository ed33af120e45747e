#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "expander/graph.hpp"

namespace expander {

// Edge-list text format:
//   line 1: "n m"
//   then m lines "u v" with 0 <= u < v < n, single space, '\n' terminated.
// Lines starting with '#' (and blank lines) are skipped on read; the writer
// never emits them.

EdgeList parse_edge_list(std::string_view text);
EdgeList read_edge_list(std::istream& in);
Graph read_graph(const std::filesystem::path& path);

std::string format_edge_list(const EdgeList& el);
void write_edge_list(std::ostream& out, const EdgeList& el);
void write_graph(const std::filesystem::path& path, const Graph& g);

}  // namespace expander
