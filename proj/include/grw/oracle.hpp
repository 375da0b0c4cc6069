#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "grw/graph.hpp"
#include "grw/walk.hpp"

namespace grw {

/// Edge-cover solves are limited to graphs with at most this many edges.
inline constexpr std::size_t kOracleMaxEdges = 20;
/// Vertex-cover solves over visited-vertex subsets need n at most this.
inline constexpr std::size_t kOracleMaxVertices = 20;
/// Hard cap on reachable states in any single solve.
inline constexpr std::size_t kOracleMaxStates = std::size_t{1} << 24;
inline constexpr double kOracleTolerance = 1e-10;

struct OracleSolution {
  double expectation = 0.0;
  std::size_t states = 0;  ///< reachable states, absorbing ones included
  double residual = 0.0;   ///< max over blocks of |Ax - b|_inf
};

/// Exact E[C_E] from start by first-step analysis over reachable
/// (vertex, traversed-edge mask) states. kind Greedy uses rule inside J_t
/// (uniform, least-index or scripted; custom rules are rejected), Simple
/// ignores the rule. Throws StateSpaceExceeded when |E| > kOracleMaxEdges.
OracleSolution solve_edge_cover(const Graph& g, WalkKind kind, Vertex start,
                                const Rule& rule = Rule::uniform_random());
double exact_edge_cover_expectation(const Graph& g, WalkKind kind, Vertex start,
                                    const Rule& rule = Rule::uniform_random());

/// Exact expected vertex cover time. Simple and VertexGreedy run on
/// (vertex, visited-vertex mask); Greedy on (vertex, traversed-edge mask).
OracleSolution solve_vertex_cover(const Graph& g, WalkKind kind, Vertex start,
                                  const Rule& rule = Rule::uniform_random());
double exact_vertex_cover_expectation(const Graph& g, WalkKind kind, Vertex start,
                                      const Rule& rule = Rule::uniform_random());

/// SRW expected hitting time of `to` from `from`.
double exact_hitting_time(const Graph& g, Vertex from, Vertex to);

/// E[T(v, B)] for SRW with V \ B absorbing. bad_set holds membership flags.
double exact_escape_expectation(const Graph& g, std::span<const char> bad_set, Vertex v);

/// One pinned value: "graph_id kind start expectation".
struct RegressionEntry {
  std::string graph_id;
  std::string kind;
  Vertex start = 0;
  double expectation = 0.0;
};

/// Parses regression lines; blank lines and lines starting with '#' are
/// skipped. Throws ParseError with the line number.
std::vector<RegressionEntry> read_regression(std::istream& in);
/// Writes one entry with 15 significant digits.
void write_regression(std::ostream& out, const RegressionEntry& entry);

}  // namespace grw
