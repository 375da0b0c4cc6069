#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "grw/graph.hpp"

namespace grw {

/// Length of a shortest cycle, or nullopt for a forest. BFS from every vertex,
/// O(|V| |E|).
std::optional<int> girth(const Graph& g);

struct SpectralEstimate {
  double lambda = 0.0;          ///< max |lambda_i|, i >= 2, of A / d
  std::uint64_t iterations = 0;
  double residual = 0.0;        ///< ||M^2 x - mu x|| at the final iterate
  bool converged = false;
};

inline constexpr double kSpectralTolerance = 1e-6;
inline constexpr std::uint64_t kSpectralMaxIterations = 100000;

/// Power iteration for the spectral radius of the normalised adjacency
/// operator restricted to the complement of the constant vector. Iterates on
/// M^2 so that eigenvalues near -1 are captured. Requires a connected regular
/// graph with at least two vertices.
SpectralEstimate spectral_radius(const Graph& g, double tolerance = kSpectralTolerance,
                                 std::uint64_t max_iterations = kSpectralMaxIterations);

/// Hierholzer's algorithm. Returns the edge sequence of a closed trail from
/// start using every edge once. Throws NotEulerian on odd degrees and
/// InvalidParameter if the edges do not form a single component containing
/// start.
std::vector<EdgeId> eulerian_circuit(const Graph& g, Vertex start);

}  // namespace grw
