#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grw/random.hpp"
#include "grw/walk.hpp"

namespace grw {

/// Z^d, optionally with a sparse set of deleted edges. When epsilon is set,
/// the centred box of radius r loses at most floor(r^(1 - epsilon)) edges.
struct LatticeSpec {
  int dimension = 1;
  std::optional<double> epsilon;
  std::uint64_t deletion_seed = 0;
};

using LatticePoint = std::vector<std::int64_t>;

/// Direction 2a moves +1 along axis a, direction 2a + 1 moves -1.
inline constexpr int kMaxLatticeDimension = 8;

/// Deleted edges as (lower endpoint, axis), in increasing shell radius.
/// Shell r receives one deletion each time floor(r^(1 - epsilon)) increases;
/// the edge joins a hash-chosen point p with |p_axis| = r to its inward
/// neighbour, so both endpoints lie in the box of radius r.
struct LatticeDeletion {
  LatticePoint lower;
  int axis;
  std::int64_t radius;
};
std::vector<LatticeDeletion> lattice_deletions(const LatticeSpec& spec, std::int64_t max_radius);

struct LatticeOptions {
  WalkKind kind = WalkKind::Greedy;
  std::uint64_t horizon = 1;
  std::size_t max_vertices = std::size_t{1} << 26;  ///< memory cap
  bool record_trajectory = false;
};

struct LatticeResult {
  std::uint64_t steps = 0;
  std::uint64_t return_count = 0;  ///< |{0 < t <= steps : X_t = 0}|
  LatticePoint position;
  std::size_t distinct_edges = 0;
  std::size_t distinct_vertices = 0;
  bool truncated = false;  ///< stopped early on the memory or coordinate cap

  std::uint64_t greedy_steps = 0;
  std::uint64_t simple_steps = 0;
  std::uint64_t stuck_count = 0;        ///< completed greedy parts
  std::uint64_t closure_violations = 0;  ///< greedy parts not ending where they began
  std::uint64_t short_part_violations = 0;  ///< greedy parts shorter than girth 4 (d >= 2)
  bool even_degree = true;                  ///< false once deletions are in play

  /// Flattened positions X_0..X_steps, dimension entries each.
  std::optional<std::vector<std::int64_t>> trajectory;
};

/// Walks GRW or SRW on the lattice for options.horizon steps from the origin.
/// GRW picks among untraversed incident edges with rule (uniform or
/// least-direction); SRW and stuck GRW steps are uniform over the present
/// edges. Part boundaries are tracked online and, on the full lattice, every
/// completed greedy part is checked to close its cycle with length >= 4.
LatticeResult run_lattice(const LatticeSpec& spec, const Rule& rule, Rng& rng, const LatticeOptions& options);
LatticeResult run_lattice(const LatticeSpec& spec, const Rule& rule, std::uint64_t seed,
                          const LatticeOptions& options);

/// Independent replay of a recorded GRW lattice trajectory with an ordered
/// edge set: greedy steps must take new edges, simple steps must leave a
/// vertex with no new edge, greedy parts must close, and the spliced simple
/// parts must form a nearest-neighbour walk.
struct LatticeAudit {
  bool valid = true;
  std::string failure;
  std::uint64_t simple_steps = 0;
  std::uint64_t parts = 0;
};
LatticeAudit audit_lattice_trajectory(const LatticeSpec& spec, const std::vector<std::int64_t>& trajectory);

}  // namespace grw
