#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace grw {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// One adjacency slot: the neighbour and the edge leading to it.
struct Incidence {
  Vertex neighbor;
  EdgeId edge;
};

/// Immutable finite undirected simple graph.
///
/// Edges are stored canonically: each edge has u < v and the edge list is
/// sorted lexicographically, so edge indices depend only on the edge set.
/// Adjacency is kept in CSR form; the slots of a vertex are ordered by edge
/// index.
class Graph {
 public:
  Graph() = default;

  /// Validates and canonicalises. Throws InvalidParameter on self-loops,
  /// duplicate edges, or out-of-range endpoints.
  Graph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const Incidence> incident(Vertex v) const {
    return {slots_.data() + offsets_[v], slots_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  /// CSR offset of the first slot of v; slot indices are global in [0, 2|E|).
  std::size_t slot_offset(Vertex v) const { return offsets_[v]; }

  Vertex other(EdgeId e, Vertex from) const {
    const Edge& ed = edges_[e];
    return ed.u == from ? ed.v : ed.u;
  }

  /// Edge index joining u and v, if any. O(min degree).
  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;

  bool is_regular() const;
  bool all_degrees_even() const;
  bool is_connected() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> slots_;
};

/// A tree with a distinguished root, parent links and per-vertex subtree edge
/// counts |T_v|.
class RootedTree {
 public:
  /// Throws InvalidParameter if g is not a tree or root is out of range.
  RootedTree(Graph g, Vertex root);

  const Graph& graph() const noexcept { return graph_; }
  Vertex root() const noexcept { return root_; }

  /// Parent of v; the root is its own parent.
  Vertex parent(Vertex v) const { return parent_[v]; }
  std::span<const Vertex> children(Vertex v) const {
    return {child_list_.data() + child_offsets_[v], child_list_.data() + child_offsets_[v + 1]};
  }
  /// Number of edges in the subtree rooted at v.
  std::size_t subtree_edges(Vertex v) const { return subtree_edges_[v]; }

  /// Vertices in breadth-first order from the root.
  std::span<const Vertex> bfs_order() const noexcept { return order_; }

 private:
  Graph graph_;
  Vertex root_;
  std::vector<Vertex> parent_;
  std::vector<std::size_t> child_offsets_;
  std::vector<Vertex> child_list_;
  std::vector<std::size_t> subtree_edges_;
  std::vector<Vertex> order_;
};

}  // namespace grw
