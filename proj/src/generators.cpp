#include "grw/generators.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "grw/error.hpp"
#include "grw/random.hpp"

namespace grw {

Graph gen_complete(std::size_t n) {
  require(n >= 2, ErrorCode::InvalidParameter, "complete graph needs n >= 2");
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph(n, std::move(edges));
}

Graph gen_path(std::size_t n) {
  require(n >= 1, ErrorCode::InvalidParameter, "path needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Graph(n, std::move(edges));
}

Graph gen_cycle(std::size_t n) {
  require(n >= 3, ErrorCode::InvalidParameter, "cycle needs n >= 3");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back({v, static_cast<Vertex>((v + 1) % n)});
  return Graph(n, std::move(edges));
}

Graph gen_star(std::size_t leaves) {
  require(leaves >= 1, ErrorCode::InvalidParameter, "star needs at least one leaf");
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return Graph(leaves + 1, std::move(edges));
}

Graph gen_hypercube(int d) { return gen_hamming_le(d, 1); }

Graph gen_hamming_le(int d, int ell) {
  require(d >= 1 && d <= 24, ErrorCode::InvalidParameter, "hypercube dimension must be in [1, 24]");
  require(ell >= 1 && ell <= d, ErrorCode::InvalidParameter, "hamming radius must be in [1, d]");
  const std::uint32_t n = 1u << d;
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m < n; ++m) {
    if (std::popcount(m) <= ell) masks.push_back(m);
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * masks.size() / 2);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t m : masks) {
      const std::uint32_t y = x ^ m;
      if (x < y) edges.push_back({x, y});
    }
  }
  return Graph(n, std::move(edges));
}

Graph gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed, bool require_connected) {
  require(d >= 1 && d < n, ErrorCode::InvalidParameter, "random regular graph needs 1 <= d < n");
  require((n * d) % 2 == 0, ErrorCode::InvalidParameter, "n * d must be even");
  Rng rng = make_rng(seed);
  std::vector<Vertex> points(n * d);
  std::vector<Edge> edges(n * d / 2);
  for (int attempt = 0; attempt < kRandomRegularRestarts; ++attempt) {
    for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<Vertex>(i / d);
    for (std::size_t i = points.size(); i > 1; --i) {
      std::swap(points[i - 1], points[uniform_below(rng, i)]);
    }
    bool simple = true;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      Vertex a = points[2 * i], b = points[2 * i + 1];
      if (a == b) {
        simple = false;
        break;
      }
      edges[i] = {std::min(a, b), std::max(a, b)};
    }
    if (!simple) continue;
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    Graph g(n, std::move(sorted));
    if (require_connected && !g.is_connected()) continue;
    return g;
  }
  throw Error(ErrorCode::GenerationFailure,
              "pairing model exceeded " + std::to_string(kRandomRegularRestarts) + " restarts");
}

Graph gen_product_k3(const Graph& h) {
  require(h.vertex_count() >= 1 && h.is_connected(), ErrorCode::InvalidParameter,
          "product with K_3 needs a connected graph");
  const auto m = static_cast<Vertex>(h.vertex_count());
  std::vector<Edge> edges;
  edges.reserve(3 * h.edge_count() + 3 * m);
  for (Vertex layer = 0; layer < 3; ++layer) {
    for (const Edge& e : h.edges()) edges.push_back({layer * m + e.u, layer * m + e.v});
  }
  for (Vertex u = 0; u < m; ++u) {
    edges.push_back({u, m + u});
    edges.push_back({u, 2 * m + u});
    edges.push_back({m + u, 2 * m + u});
  }
  return Graph(3 * m, std::move(edges));
}

Graph gen_torus(const std::vector<int>& side_lengths) {
  require(!side_lengths.empty(), ErrorCode::InvalidParameter, "torus needs at least one side");
  std::size_t n = 1;
  for (int s : side_lengths) {
    require(s >= 3, ErrorCode::InvalidParameter, "torus sides must be >= 3");
    n *= static_cast<std::size_t>(s);
  }
  std::vector<Edge> edges;
  edges.reserve(n * side_lengths.size());
  std::size_t stride = 1;
  for (int s : side_lengths) {
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t coord = (v / stride) % s;
      const std::size_t w = coord + 1 == static_cast<std::size_t>(s) ? v - coord * stride : v + stride;
      edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(w)});
    }
    stride *= static_cast<std::size_t>(s);
  }
  return Graph(n, std::move(edges));
}

RootedTree gen_tree(const std::vector<int>& children_per_level) {
  if (!children_per_level.empty()) {
    require(children_per_level.front() >= 2, ErrorCode::InvalidParameter, "tree root needs degree >= 2");
  }
  for (int c : children_per_level) {
    require(c >= 1, ErrorCode::InvalidParameter, "every tree level needs at least one child per vertex");
  }
  std::vector<Edge> edges;
  std::vector<Vertex> frontier{0};
  Vertex next = 1;
  for (int c : children_per_level) {
    std::vector<Vertex> below;
    below.reserve(frontier.size() * static_cast<std::size_t>(c));
    for (Vertex p : frontier) {
      for (int i = 0; i < c; ++i) {
        edges.push_back({p, next});
        below.push_back(next++);
      }
    }
    frontier = std::move(below);
  }
  return RootedTree(Graph(next, std::move(edges)), 0);
}

RootedTree gen_regular_tree(int d, int depth) {
  require(d >= 2, ErrorCode::InvalidParameter, "regular tree needs d >= 2");
  require(depth >= 0, ErrorCode::InvalidParameter, "tree depth must be nonnegative");
  std::vector<int> levels;
  for (int i = 0; i < depth; ++i) levels.push_back(i == 0 ? d : d - 1);
  return gen_tree(levels);
}

RootedTree gen_random_tree(std::size_t n, std::uint64_t seed) {
  require(n >= 1, ErrorCode::InvalidParameter, "tree needs a vertex");
  Rng rng = make_rng(seed);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({static_cast<Vertex>(uniform_below(rng, v)), v});
  return RootedTree(Graph(n, std::move(edges)), 0);
}

}  // namespace grw
