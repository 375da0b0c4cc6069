#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grw/graph.hpp"
#include "grw/random.hpp"
#include "grw/stats.hpp"

namespace grw {

enum class WalkKind { Greedy, Simple, VertexGreedy };

const char* to_string(WalkKind kind);
WalkKind parse_walk_kind(const std::string& name);

/// Sample path X_0..X_T and the edges taken. edges[i] joins vertices[i] and
/// vertices[i + 1].
struct TrajectoryLog {
  std::vector<Vertex> vertices;
  std::vector<EdgeId> edges;

  std::uint64_t length() const { return edges.size(); }
};

class WalkState;

/// What a custom rule may look at: the whole history, the current state, and
/// the candidate edges it must pick from.
struct RuleContext {
  const Graph& graph;
  const WalkState& state;
  std::span<const EdgeId> candidates;
  const TrajectoryLog* trajectory;
};

using RulePolicy = std::function<EdgeId(const RuleContext&)>;

/// Policy choosing one edge out of a nonempty candidate set.
class Rule {
 public:
  enum class Kind { UniformRandom, LeastIndex, Scripted, Custom };

  static Rule uniform_random();
  static Rule least_index();
  /// priority_order lists edges from most to least preferred; unlisted edges
  /// come after all listed ones, by edge index.
  static Rule scripted(const std::vector<EdgeId>& priority_order);
  static Rule custom(RulePolicy policy);

  Kind kind() const noexcept { return kind_; }
  std::string name() const;

  /// Rank used by Scripted rules; lower is preferred.
  std::uint64_t rank(EdgeId e) const {
    return e < rank_.size() ? rank_[e] : listed_ + e;
  }

  /// Picks a member of ctx.candidates. Throws InvalidParameter if a custom
  /// policy returns a non-candidate.
  EdgeId choose(const RuleContext& ctx, Rng& rng) const;

 private:
  explicit Rule(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::vector<std::uint64_t> rank_;
  std::uint64_t listed_ = 0;
  RulePolicy policy_;
};

Rule parse_rule(const std::string& name);

/// Walker position plus the traversed set H_t and the per-vertex unvisited
/// incident sets J_t(v).
///
/// J_t(v) lives in a CSR-shaped permutation of the incident edges: the first
/// unvisited_count(v) slots of v's region are exactly J_t(v). Traversing an
/// edge swap-removes it from both endpoint regions in O(1), and uniform
/// sampling from J_t(v) is a single index draw.
class WalkState {
 public:
  WalkState(const Graph& g, Vertex start);

  /// Back to time 0 at start with nothing traversed. O(|V| + |E|).
  void reset(Vertex start);

  const Graph& graph() const noexcept { return *graph_; }
  std::uint64_t time() const noexcept { return time_; }
  Vertex position() const noexcept { return position_; }

  bool traversed(EdgeId e) const { return traversed_[e] != 0; }
  std::size_t traversed_count() const noexcept { return traversed_count_; }
  bool all_edges_traversed() const noexcept { return traversed_count_ == graph_->edge_count(); }

  /// J_t(v), in no particular order.
  std::span<const EdgeId> unvisited_incident(Vertex v) const {
    return {slots_.data() + graph_->slot_offset(v), unvisited_count_[v]};
  }
  /// |{v : J_t(v) is empty}|.
  std::size_t stuck_count() const noexcept { return stuck_count_; }

  bool visited(Vertex v) const { return visited_[v] != 0; }
  std::size_t visited_count() const noexcept { return visited_count_; }

  /// Incident edges of v leading to never-visited vertices. The span is
  /// invalidated by the next call.
  std::span<const EdgeId> edges_to_unvisited(Vertex v);

  /// Moves along e (which must touch the current position). Returns true if
  /// e had not been traversed before.
  bool advance(EdgeId e);

  /// Checks every internal invariant in O(|V| + |E|). Throws Validation.
  void check_invariants() const;

 private:
  void remove_from(Vertex v, EdgeId e, std::uint32_t& pos_slot);

  const Graph* graph_;
  std::uint64_t time_ = 0;
  Vertex position_ = 0;
  std::vector<EdgeId> slots_;
  std::vector<std::uint32_t> unvisited_count_;
  // Global slot of edge e inside the region of its lower / higher endpoint.
  std::vector<std::uint32_t> pos_lo_;
  std::vector<std::uint32_t> pos_hi_;
  std::vector<std::uint8_t> traversed_;
  std::size_t traversed_count_ = 0;
  std::size_t stuck_count_ = 0;
  std::vector<std::uint8_t> visited_;
  std::size_t visited_count_ = 0;

  std::vector<EdgeId> scratch_;
};

struct StepResult {
  EdgeId edge;
  Vertex to;
  bool new_edge;
};

/// One transition. GRW: rule over J_t(X_t) when nonempty, else uniform over
/// all incident edges. SRW: always uniform. VertexGreedy: rule over edges to
/// never-visited neighbours, else uniform. Appends to log when given; custom
/// rules require a log. Throws NoMove at an isolated vertex.
StepResult step(WalkState& state, const Rule& rule, Rng& rng, WalkKind kind, TrajectoryLog* log = nullptr);

/// Boundaries of the greedy and simple parts.
///
/// greedy_start holds t_0, t_1, ... and stuck holds s_1, s_2, ...; greedy part
/// i (1-based) is [greedy_start[i-1], stuck[i-1]) and simple part i is
/// [stuck[i-1], greedy_start[i]). On a completed cover the final stuck time
/// equals the cover time and k = stuck.size(); the trailing t_k = s_k is not
/// stored.
struct PartDecomposition {
  std::vector<std::uint64_t> greedy_start;
  std::vector<Vertex> greedy_start_vertex;
  std::vector<std::uint64_t> stuck;
  std::vector<Vertex> stuck_vertex;
  std::vector<std::size_t> bad_size;  ///< |B_i| at each stuck time
  bool complete = false;

  std::size_t k() const { return complete ? stuck.size() : 0; }
  std::uint64_t greedy_length(std::size_t i) const { return stuck[i] - greedy_start[i]; }
  /// t_i - s_i for i = 1..k-1 (0-based index i-1); the final part has length 0.
  std::uint64_t simple_length(std::size_t i) const {
    return i + 1 < greedy_start.size() ? greedy_start[i + 1] - stuck[i] : 0;
  }
  std::uint64_t total_simple() const;
  std::uint64_t total_greedy() const;

  friend bool operator==(const PartDecomposition&, const PartDecomposition&) = default;
};

using StuckObserver = std::function<void(const WalkState&, const PartDecomposition&)>;

inline constexpr std::uint64_t kUnboundedCap = ~std::uint64_t{0};

struct RunOptions {
  WalkKind kind = WalkKind::Greedy;
  std::uint64_t cap = kUnboundedCap;
  bool record_trajectory = false;
  StuckObserver on_stuck;  ///< called after each stuck time is recorded
};

struct CoverResult {
  std::uint64_t cover_time = 0;  ///< steps taken (the cap if truncated)
  std::uint64_t overhead = 0;    ///< cover_time - |E|
  bool truncated = false;
  PartDecomposition parts;
  std::optional<TrajectoryLog> trajectory;
};

/// Walks until every edge is traversed or cap steps elapse. The state is
/// reset to start first so it can be reused across trials.
CoverResult run_until_edge_cover(WalkState& state, const Rule& rule, Vertex start, Rng& rng,
                                 const RunOptions& options = {});
CoverResult run_until_edge_cover(const Graph& g, const Rule& rule, Vertex start, std::uint64_t seed,
                                 const RunOptions& options = {});

struct VertexCoverResult {
  std::uint64_t cover_time = 0;
  bool truncated = false;
  std::optional<TrajectoryLog> trajectory;
};

VertexCoverResult run_until_vertex_cover(WalkState& state, const Rule& rule, Vertex start, Rng& rng,
                                         const RunOptions& options = {});
VertexCoverResult run_until_vertex_cover(const Graph& g, const Rule& rule, Vertex start, std::uint64_t seed,
                                         const RunOptions& options = {});

/// Offline recomputation of the part boundaries by replaying a trajectory.
/// Throws Validation if consecutive vertices are not joined by the logged edge.
PartDecomposition decompose(const TrajectoryLog& trajectory, const Graph& g);

/// Simple-part segments spliced end to end.
struct ConcatenationAudit {
  bool valid = true;
  std::vector<Vertex> spliced;  ///< concatenated simple-part vertex sequence
  std::uint64_t simple_steps = 0;
  std::string failure;
};

/// Removes the greedy intervals and checks that the remaining simple parts
/// join up into one walk (each part starts where the previous ended), that
/// consecutive spliced vertices are adjacent, and that every spliced step
/// left a vertex with J_t empty, i.e. was drawn uniformly over neighbours.
ConcatenationAudit audit_concatenation(const TrajectoryLog& trajectory, const Graph& g);

/// SRW steps from start until the walk first leaves bad_set (membership
/// flags). Throws NeverEscapes if bad_set covers every vertex and
/// InvalidParameter if start is not in it.
std::uint64_t escape_time(const Graph& g, std::span<const char> bad_set, Vertex start, Rng& rng);
std::uint64_t escape_time(const Graph& g, std::span<const char> bad_set, Vertex start, std::uint64_t seed);

/// Monte Carlo estimate of the expected number of distinct edges covered in
/// t steps, for each t in t_values, starting from vertex 0. Trial i uses
/// stream i of seed.
std::vector<ExperimentResult> range_growth(const Graph& g, WalkKind kind, const Rule& rule,
                                           const std::vector<std::uint64_t>& t_values, std::size_t trials,
                                           std::uint64_t seed, int workers = 0);

/// "t u v edge_id part" per step, part G for a newly traversed edge and S
/// otherwise.
void write_trajectory(std::ostream& out, const TrajectoryLog& trajectory, const Graph& g);

}  // namespace grw
