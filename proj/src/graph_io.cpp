#include "grw/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "grw/error.hpp"

namespace grw {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& why) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + why);
}

// Reads exactly two unsigned decimal fields separated by blanks.
std::pair<std::uint64_t, std::uint64_t> two_fields(std::string_view s, std::size_t line) {
  std::uint64_t out[2];
  std::size_t pos = 0;
  for (int k = 0; k < 2; ++k) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), out[k]);
    if (ec != std::errc() || ptr == s.data() + pos) parse_fail(line, "expected two nonnegative integers");
    pos = static_cast<std::size_t>(ptr - s.data());
  }
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r')) ++pos;
  if (pos != s.size()) parse_fail(line, "trailing characters");
  return {out[0], out[1]};
}

}  // namespace

Graph load_graph(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  if (lines.empty()) parse_fail(1, "missing header");
  auto [n, m] = two_fields(lines[0], 1);
  if (lines.size() < m + 1) parse_fail(lines.size() + 1, "expected " + std::to_string(m) + " edge lines");
  for (std::size_t i = m + 1; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t\r") != std::string_view::npos) parse_fail(i + 1, "unexpected extra line");
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (std::size_t i = 1; i <= m; ++i) {
    auto [u, v] = two_fields(lines[i], i + 1);
    if (u >= n || v >= n) parse_fail(i + 1, "vertex index out of range");
    if (u == v) parse_fail(i + 1, "self-loop");
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) parse_fail(i + 1, "duplicate edge");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Graph(n, std::move(edges));
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_graph(buf.str());
}

std::string save_graph(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

void save_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::Validation, "cannot write " + path);
  out << save_graph(g);
}

}  // namespace grw
