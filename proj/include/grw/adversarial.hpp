#pragma once

#include "grw/graph.hpp"
#include "grw/walk.hpp"

namespace grw {

/// Scripted rule for G = H x K_3 (as built by gen_product_k3) that makes the
/// first greedy part walk an Eulerian circuit of layer 0 from start, cross the
/// start fiber to layer 1, walk its circuit, cross to layer 2, walk its
/// circuit, and close the start fiber. The walker is then stuck at start and
/// the uncovered edges are the K_3 fibers of every other vertex of H.
///
/// start must lie in layer 0. Throws NotEulerian if H has an odd degree.
Rule adversarial_layer_rule(const Graph& product, const Graph& h, Vertex start);

/// Length of the first greedy part under adversarial_layer_rule: 3|E_H| + 3.
std::uint64_t adversarial_first_part_length(const Graph& h);

/// True iff the untraversed edges of state are exactly the fibers
/// {(u,0),(u,1),(u,2)} for u != start, each with all three edges untraversed.
bool residue_is_nonstart_triangles(const WalkState& state, const Graph& h, Vertex start);

}  // namespace grw
