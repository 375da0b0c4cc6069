#pragma once

#include <cstdint>
#include <vector>

#include "grw/graph.hpp"

namespace grw {

Graph gen_complete(std::size_t n);
Graph gen_path(std::size_t n);
Graph gen_cycle(std::size_t n);
Graph gen_star(std::size_t leaves);

/// Q_d on {0,1}^d; vertex index = bit string.
Graph gen_hypercube(int d);

/// {0,1}^d with x ~ y iff 1 <= Hamming(x, y) <= ell.
Graph gen_hamming_le(int d, int ell);

/// Uniform-ish simple d-regular graph from the pairing model. A pairing with a
/// loop or a repeated pair is discarded and the whole pairing redrawn, at most
/// kRandomRegularRestarts times. With require_connected, disconnected draws
/// count as rejections too.
Graph gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed, bool require_connected = false);
inline constexpr int kRandomRegularRestarts = 1000;

/// Cartesian product H x K_3. Vertex (u, layer) has index layer * |V_H| + u,
/// so layer i occupies the contiguous range [i |V_H|, (i + 1) |V_H|).
Graph gen_product_k3(const Graph& h);

/// Product of cycles C_{s_1} x ... x C_{s_k}; mixed-radix index with the
/// first side varying fastest.
Graph gen_torus(const std::vector<int>& side_lengths);

/// Rooted tree where every vertex at depth i has children_per_level[i]
/// children. Depth equals children_per_level.size().
RootedTree gen_tree(const std::vector<int>& children_per_level);

/// d-regular tree truncated at the given depth: the root has d children and
/// every other internal vertex d - 1.
RootedTree gen_regular_tree(int d, int depth);

/// Random recursive tree on n vertices (vertex i attaches to a uniform
/// earlier vertex), rooted at 0.
RootedTree gen_random_tree(std::size_t n, std::uint64_t seed);

}  // namespace grw
