#include "grw/graph.hpp"

#include <algorithm>
#include <string>

#include "grw/error.hpp"

namespace grw {

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  for (Edge& e : edges_) {
    require(e.u < vertex_count_ && e.v < vertex_count_, ErrorCode::InvalidParameter,
            "edge endpoint out of range: " + std::to_string(e.u) + " " + std::to_string(e.v));
    require(e.u != e.v, ErrorCode::InvalidParameter, "self-loop at " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  require(dup == edges_.end(), ErrorCode::InvalidParameter,
          dup == edges_.end() ? "" : "duplicate edge " + std::to_string(dup->u) + " " + std::to_string(dup->v));

  offsets_.assign(vertex_count_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < vertex_count_; ++v) offsets_[v + 1] += offsets_[v];
  slots_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    slots_[fill[e.u]++] = {e.v, id};
    slots_[fill[e.v]++] = {e.u, id};
  }
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const {
  if (u >= vertex_count_ || v >= vertex_count_) return std::nullopt;
  if (degree(u) > degree(v)) std::swap(u, v);
  for (const Incidence& inc : incident(u)) {
    if (inc.neighbor == v) return inc.edge;
  }
  return std::nullopt;
}

bool Graph::is_regular() const {
  if (vertex_count_ == 0) return true;
  const std::size_t d = degree(0);
  for (Vertex v = 1; v < vertex_count_; ++v) {
    if (degree(v) != d) return false;
  }
  return true;
}

bool Graph::all_degrees_even() const {
  for (Vertex v = 0; v < vertex_count_; ++v) {
    if (degree(v) % 2 != 0) return false;
  }
  return true;
}

bool Graph::is_connected() const {
  if (vertex_count_ <= 1) return true;
  std::vector<char> seen(vertex_count_, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : incident(v)) {
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = 1;
        ++reached;
        stack.push_back(inc.neighbor);
      }
    }
  }
  return reached == vertex_count_;
}

RootedTree::RootedTree(Graph g, Vertex root) : graph_(std::move(g)), root_(root) {
  const std::size_t n = graph_.vertex_count();
  require(root_ < n, ErrorCode::InvalidParameter, "tree root out of range");
  require(graph_.edge_count() + 1 == n && graph_.is_connected(), ErrorCode::InvalidParameter,
          "graph is not a tree");

  parent_.assign(n, root_);
  std::vector<char> seen(n, 0);
  seen[root_] = 1;
  order_.reserve(n);
  order_.push_back(root_);
  for (std::size_t head = 0; head < order_.size(); ++head) {
    Vertex v = order_[head];
    for (const Incidence& inc : graph_.incident(v)) {
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = 1;
        parent_[inc.neighbor] = v;
        order_.push_back(inc.neighbor);
      }
    }
  }

  child_offsets_.assign(n + 1, 0);
  for (Vertex v : order_) {
    if (v != root_) ++child_offsets_[parent_[v] + 1];
  }
  for (std::size_t v = 0; v < n; ++v) child_offsets_[v + 1] += child_offsets_[v];
  child_list_.resize(n - 1);
  std::vector<std::size_t> fill(child_offsets_.begin(), child_offsets_.end() - 1);
  for (Vertex v : order_) {
    if (v != root_) child_list_[fill[parent_[v]]++] = v;
  }

  // |T_v| = sum over children c of (|T_c| + 1), accumulated leaves-up.
  subtree_edges_.assign(n, 0);
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    if (*it != root_) subtree_edges_[parent_[*it]] += subtree_edges_[*it] + 1;
  }
}

}  // namespace grw
