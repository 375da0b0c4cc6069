#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "grw/graph.hpp"

namespace grw {

/// Edge-list text: "<vertex_count> <edge_count>" then one "<u> <v>" line per
/// edge. Parse errors name the offending 1-based line.
Graph load_graph(std::string_view text);
Graph load_graph_file(const std::string& path);

/// Canonical form: u < v, edges in index order, newline-terminated.
std::string save_graph(const Graph& g);
void save_graph_file(const Graph& g, const std::string& path);

}  // namespace grw
