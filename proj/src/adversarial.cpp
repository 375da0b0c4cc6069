#include "grw/adversarial.hpp"

#include "grw/analysis.hpp"
#include "grw/error.hpp"

namespace grw {

namespace {

EdgeId fiber_edge(const Graph& product, Vertex a, Vertex b) {
  auto e = product.find_edge(a, b);
  require(e.has_value(), ErrorCode::InvalidParameter, "graph is not the K_3 product of h");
  return *e;
}

}  // namespace

Rule adversarial_layer_rule(const Graph& product, const Graph& h, Vertex start) {
  const auto m = static_cast<Vertex>(h.vertex_count());
  require(product.vertex_count() == 3 * std::size_t{m} &&
              product.edge_count() == 3 * h.edge_count() + 3 * std::size_t{m},
          ErrorCode::InvalidParameter, "graph is not the K_3 product of h");
  require(start < m, ErrorCode::InvalidParameter, "start must lie in layer 0");

  const std::vector<EdgeId> circuit = eulerian_circuit(h, start);
  std::vector<EdgeId> order;
  order.reserve(3 * circuit.size() + 3);
  for (Vertex layer = 0; layer < 3; ++layer) {
    for (EdgeId he : circuit) {
      const Edge& e = h.edge(he);
      order.push_back(fiber_edge(product, layer * m + e.u, layer * m + e.v));
    }
    const Vertex next = (layer + 1) % 3;
    order.push_back(fiber_edge(product, layer * m + start, next * m + start));
  }
  return Rule::scripted(order);
}

std::uint64_t adversarial_first_part_length(const Graph& h) { return 3 * h.edge_count() + 3; }

bool residue_is_nonstart_triangles(const WalkState& state, const Graph& h, Vertex start) {
  const Graph& g = state.graph();
  const auto m = static_cast<Vertex>(h.vertex_count());
  std::size_t expected = 0;
  for (Vertex u = 0; u < m; ++u) {
    const bool covered = u == start;
    for (auto [a, b] : {std::pair{0u, 1u}, {0u, 2u}, {1u, 2u}}) {
      const auto e = g.find_edge(a * m + u, b * m + u);
      if (!e || state.traversed(*e) != covered) return false;
    }
    if (!covered) expected += 3;
  }
  return g.edge_count() - state.traversed_count() == expected;
}

}  // namespace grw
