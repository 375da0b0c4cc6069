#include "grw/walk.hpp"

#include <algorithm>
#include <ostream>

#include "grw/error.hpp"
#include "grw/parallel.hpp"

namespace grw {

const char* to_string(WalkKind kind) {
  switch (kind) {
    case WalkKind::Greedy: return "grw";
    case WalkKind::Simple: return "srw";
    case WalkKind::VertexGreedy: return "vertex-greedy";
  }
  return "?";
}

WalkKind parse_walk_kind(const std::string& name) {
  if (name == "grw" || name == "grw-rand") return WalkKind::Greedy;
  if (name == "srw") return WalkKind::Simple;
  if (name == "vertex-greedy" || name == "vgrw") return WalkKind::VertexGreedy;
  throw Error(ErrorCode::InvalidParameter, "unknown walk kind '" + name + "'");
}

// ---------------------------------------------------------------- Rule

Rule Rule::uniform_random() { return Rule(Kind::UniformRandom); }
Rule Rule::least_index() { return Rule(Kind::LeastIndex); }

Rule Rule::scripted(const std::vector<EdgeId>& priority_order) {
  Rule r(Kind::Scripted);
  r.listed_ = priority_order.size();
  EdgeId max_edge = 0;
  for (EdgeId e : priority_order) max_edge = std::max(max_edge, e);
  r.rank_.resize(priority_order.empty() ? 0 : std::size_t{max_edge} + 1);
  for (EdgeId e = 0; e < r.rank_.size(); ++e) r.rank_[e] = r.listed_ + e;
  for (std::size_t i = 0; i < priority_order.size(); ++i) {
    require(r.rank_[priority_order[i]] >= r.listed_, ErrorCode::InvalidParameter, "edge listed twice in script");
    r.rank_[priority_order[i]] = i;
  }
  return r;
}

Rule Rule::custom(RulePolicy policy) {
  require(static_cast<bool>(policy), ErrorCode::InvalidParameter, "custom rule needs a policy");
  Rule r(Kind::Custom);
  r.policy_ = std::move(policy);
  return r;
}

std::string Rule::name() const {
  switch (kind_) {
    case Kind::UniformRandom: return "rand";
    case Kind::LeastIndex: return "least";
    case Kind::Scripted: return "scripted";
    case Kind::Custom: return "custom";
  }
  return "?";
}

Rule parse_rule(const std::string& name) {
  if (name == "rand" || name == "uniform") return Rule::uniform_random();
  if (name == "least" || name == "least-index") return Rule::least_index();
  throw Error(ErrorCode::InvalidParameter, "unknown rule '" + name + "'");
}

EdgeId Rule::choose(const RuleContext& ctx, Rng& rng) const {
  const auto& c = ctx.candidates;
  switch (kind_) {
    case Kind::UniformRandom:
      return c[uniform_below(rng, c.size())];
    case Kind::LeastIndex:
      return *std::min_element(c.begin(), c.end());
    case Kind::Scripted:
      return *std::min_element(c.begin(), c.end(), [this](EdgeId a, EdgeId b) { return rank(a) < rank(b); });
    case Kind::Custom: {
      const EdgeId e = policy_(ctx);
      require(std::find(c.begin(), c.end(), e) != c.end(), ErrorCode::InvalidParameter,
              "custom rule returned a non-candidate edge");
      return e;
    }
  }
  return c.front();
}

// ---------------------------------------------------------------- WalkState

WalkState::WalkState(const Graph& g, Vertex start) : graph_(&g) { reset(start); }

void WalkState::reset(Vertex start) {
  const Graph& g = *graph_;
  require(start < g.vertex_count(), ErrorCode::InvalidParameter, "start vertex out of range");
  const std::size_t n = g.vertex_count();
  const std::size_t m = g.edge_count();
  time_ = 0;
  position_ = start;
  slots_.resize(2 * m);
  unvisited_count_.resize(n);
  pos_lo_.resize(m);
  pos_hi_.resize(m);
  traversed_.assign(m, 0);
  traversed_count_ = 0;
  stuck_count_ = 0;
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t off = g.slot_offset(v);
    auto inc = g.incident(v);
    unvisited_count_[v] = static_cast<std::uint32_t>(inc.size());
    if (inc.empty()) ++stuck_count_;
    for (std::size_t i = 0; i < inc.size(); ++i) {
      const EdgeId e = inc[i].edge;
      slots_[off + i] = e;
      (g.edge(e).u == v ? pos_lo_[e] : pos_hi_[e]) = static_cast<std::uint32_t>(off + i);
    }
  }
  visited_.assign(n, 0);
  visited_[start] = 1;
  visited_count_ = 1;
}

void WalkState::remove_from(Vertex v, EdgeId e, std::uint32_t& pos_slot) {
  const std::uint32_t last = static_cast<std::uint32_t>(graph_->slot_offset(v)) + unvisited_count_[v] - 1;
  const std::uint32_t p = pos_slot;
  const EdgeId moved = slots_[last];
  slots_[p] = moved;
  slots_[last] = e;
  (graph_->edge(moved).u == v ? pos_lo_[moved] : pos_hi_[moved]) = p;
  pos_slot = last;
  if (--unvisited_count_[v] == 0) ++stuck_count_;
}

std::span<const EdgeId> WalkState::edges_to_unvisited(Vertex v) {
  scratch_.clear();
  for (const Incidence& inc : graph_->incident(v)) {
    if (!visited_[inc.neighbor]) scratch_.push_back(inc.edge);
  }
  return scratch_;
}

bool WalkState::advance(EdgeId e) {
  const Edge& ed = graph_->edge(e);
  require(ed.u == position_ || ed.v == position_, ErrorCode::Validation, "edge does not touch the walker");
  const bool fresh = traversed_[e] == 0;
  if (fresh) {
    traversed_[e] = 1;
    ++traversed_count_;
    remove_from(ed.u, e, pos_lo_[e]);
    remove_from(ed.v, e, pos_hi_[e]);
  }
  position_ = ed.u == position_ ? ed.v : ed.u;
  if (!visited_[position_]) {
    visited_[position_] = 1;
    ++visited_count_;
  }
  ++time_;
  return fresh;
}

void WalkState::check_invariants() const {
  const Graph& g = *graph_;
  std::size_t traversed = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) traversed += traversed_[e];
  require(traversed == traversed_count_, ErrorCode::Validation, "traversed count drifted");
  std::size_t stuck = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto j = unvisited_incident(v);
    std::size_t expected = 0;
    for (const Incidence& inc : g.incident(v)) expected += traversed_[inc.edge] ? 0 : 1;
    require(j.size() == expected, ErrorCode::Validation, "J_t(v) size mismatch");
    for (std::size_t i = 0; i < j.size(); ++i) {
      const EdgeId e = j[i];
      require(!traversed_[e], ErrorCode::Validation, "traversed edge left in J_t(v)");
      const std::uint32_t pos = g.edge(e).u == v ? pos_lo_[e] : pos_hi_[e];
      require(pos == g.slot_offset(v) + i, ErrorCode::Validation, "position index out of sync");
    }
    if (j.empty()) ++stuck;
  }
  require(stuck == stuck_count_, ErrorCode::Validation, "stuck count drifted");
}

// ---------------------------------------------------------------- step

namespace {

EdgeId uniform_incident(const Graph& g, Vertex v, Rng& rng) {
  auto inc = g.incident(v);
  require(!inc.empty(), ErrorCode::NoMove, "vertex " + std::to_string(v) + " has no neighbours");
  return inc[uniform_below(rng, inc.size())].edge;
}

}  // namespace

StepResult step(WalkState& state, const Rule& rule, Rng& rng, WalkKind kind, TrajectoryLog* log) {
  const Graph& g = state.graph();
  const Vertex here = state.position();
  require(rule.kind() != Rule::Kind::Custom || log != nullptr, ErrorCode::InvalidParameter,
          "custom rules need a trajectory log");
  EdgeId e;
  std::span<const EdgeId> candidates;
  if (kind == WalkKind::Greedy) {
    candidates = state.unvisited_incident(here);
  } else if (kind == WalkKind::VertexGreedy) {
    candidates = state.edges_to_unvisited(here);
  }
  if (!candidates.empty()) {
    e = rule.choose(RuleContext{g, state, candidates, log}, rng);
  } else {
    e = uniform_incident(g, here, rng);
  }
  const bool fresh = state.advance(e);
  if (log != nullptr) {
    if (log->vertices.empty()) log->vertices.push_back(here);
    log->vertices.push_back(state.position());
    log->edges.push_back(e);
  }
  return {e, state.position(), fresh};
}

// ---------------------------------------------------------------- runs

std::uint64_t PartDecomposition::total_simple() const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < stuck.size(); ++i) s += simple_length(i);
  return s;
}

std::uint64_t PartDecomposition::total_greedy() const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < stuck.size(); ++i) s += greedy_length(i);
  return s;
}

CoverResult run_until_edge_cover(WalkState& state, const Rule& rule, Vertex start, Rng& rng,
                                 const RunOptions& options) {
  const Graph& g = state.graph();
  require(start < g.vertex_count(), ErrorCode::InvalidParameter, "start vertex out of range");
  require(g.degree(start) > 0, ErrorCode::NoMove, "start vertex has degree 0");
  require(options.cap >= g.edge_count(), ErrorCode::InvalidParameter, "cap must be at least |E|");
  state.reset(start);

  CoverResult result;
  const bool record = options.record_trajectory || rule.kind() == Rule::Kind::Custom;
  if (record) result.trajectory.emplace().vertices.push_back(start);
  TrajectoryLog* log = record ? &*result.trajectory : nullptr;

  PartDecomposition& parts = result.parts;
  parts.greedy_start.push_back(0);
  parts.greedy_start_vertex.push_back(start);
  bool in_greedy = true;
  while (!state.all_edges_traversed()) {
    if (state.time() >= options.cap) {
      result.truncated = true;
      break;
    }
    step(state, rule, rng, options.kind, log);
    const Vertex x = state.position();
    const bool j_empty = state.unvisited_incident(x).empty();
    if (in_greedy && j_empty) {
      parts.stuck.push_back(state.time());
      parts.stuck_vertex.push_back(x);
      parts.bad_size.push_back(state.stuck_count());
      in_greedy = false;
      if (state.all_edges_traversed()) parts.complete = true;
      if (options.on_stuck) options.on_stuck(state, parts);
    } else if (!in_greedy && !j_empty) {
      parts.greedy_start.push_back(state.time());
      parts.greedy_start_vertex.push_back(x);
      in_greedy = true;
    }
  }
  result.cover_time = state.time();
  result.overhead = result.cover_time >= g.edge_count() ? result.cover_time - g.edge_count() : 0;
  return result;
}

CoverResult run_until_edge_cover(const Graph& g, const Rule& rule, Vertex start, std::uint64_t seed,
                                 const RunOptions& options) {
  WalkState state(g, start);
  Rng rng = make_rng(seed);
  return run_until_edge_cover(state, rule, start, rng, options);
}

VertexCoverResult run_until_vertex_cover(WalkState& state, const Rule& rule, Vertex start, Rng& rng,
                                         const RunOptions& options) {
  const Graph& g = state.graph();
  state.reset(start);
  VertexCoverResult result;
  const bool record = options.record_trajectory || rule.kind() == Rule::Kind::Custom;
  if (record) result.trajectory.emplace().vertices.push_back(start);
  TrajectoryLog* log = record ? &*result.trajectory : nullptr;
  while (state.visited_count() < g.vertex_count()) {
    if (state.time() >= options.cap) {
      result.truncated = true;
      break;
    }
    step(state, rule, rng, options.kind, log);
  }
  result.cover_time = state.time();
  return result;
}

VertexCoverResult run_until_vertex_cover(const Graph& g, const Rule& rule, Vertex start, std::uint64_t seed,
                                         const RunOptions& options) {
  WalkState state(g, start);
  Rng rng = make_rng(seed);
  return run_until_vertex_cover(state, rule, start, rng, options);
}

// ---------------------------------------------------------------- offline

namespace {

void validate_trajectory(const TrajectoryLog& tr, const Graph& g) {
  require(tr.vertices.size() == tr.edges.size() + 1, ErrorCode::Validation,
          "trajectory needs one more vertex than edges");
  for (Vertex v : tr.vertices) require(v < g.vertex_count(), ErrorCode::Validation, "vertex out of range");
  for (std::size_t i = 0; i < tr.edges.size(); ++i) {
    require(tr.edges[i] < g.edge_count(), ErrorCode::Validation, "edge out of range");
    const Edge& e = g.edge(tr.edges[i]);
    const Vertex a = tr.vertices[i], b = tr.vertices[i + 1];
    require((e.u == a && e.v == b) || (e.u == b && e.v == a), ErrorCode::Validation,
            "step " + std::to_string(i) + " does not follow its edge");
  }
}

}  // namespace

PartDecomposition decompose(const TrajectoryLog& trajectory, const Graph& g) {
  validate_trajectory(trajectory, g);
  // Independent replay with plain per-vertex remaining-edge counters.
  std::vector<char> seen(g.edge_count(), 0);
  std::vector<std::size_t> remaining(g.vertex_count());
  std::size_t empty_vertices = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    remaining[v] = g.degree(v);
    if (remaining[v] == 0) ++empty_vertices;
  }
  std::size_t covered = 0;

  PartDecomposition parts;
  parts.greedy_start.push_back(0);
  parts.greedy_start_vertex.push_back(trajectory.vertices.front());
  bool in_greedy = true;
  for (std::size_t i = 0; i < trajectory.edges.size() && covered < g.edge_count(); ++i) {
    const EdgeId e = trajectory.edges[i];
    if (!seen[e]) {
      seen[e] = 1;
      ++covered;
      for (Vertex end : {g.edge(e).u, g.edge(e).v}) {
        if (--remaining[end] == 0) ++empty_vertices;
      }
    }
    const std::uint64_t t = i + 1;
    const Vertex x = trajectory.vertices[t];
    if (in_greedy && remaining[x] == 0) {
      parts.stuck.push_back(t);
      parts.stuck_vertex.push_back(x);
      parts.bad_size.push_back(empty_vertices);
      in_greedy = false;
      if (covered == g.edge_count()) parts.complete = true;
    } else if (!in_greedy && remaining[x] != 0) {
      parts.greedy_start.push_back(t);
      parts.greedy_start_vertex.push_back(x);
      in_greedy = true;
    }
  }
  return parts;
}

ConcatenationAudit audit_concatenation(const TrajectoryLog& trajectory, const Graph& g) {
  ConcatenationAudit audit;
  const PartDecomposition parts = decompose(trajectory, g);
  const std::size_t steps = trajectory.edges.size();

  // part_of[t] = index j of the simple part [s_j, t_j) containing time t, or -1.
  std::vector<long> part_of(steps, -1);
  for (std::size_t j = 0; j < parts.stuck.size(); ++j) {
    const std::uint64_t begin = parts.stuck[j];
    const std::uint64_t end = j + 1 < parts.greedy_start.size() ? parts.greedy_start[j + 1]
                              : parts.complete                   ? begin
                                                                 : steps;
    for (std::uint64_t t = begin; t < end && t < steps; ++t) part_of[t] = static_cast<long>(j);
  }

  std::vector<std::size_t> remaining(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) remaining[v] = g.degree(v);
  std::vector<char> seen(g.edge_count(), 0);
  auto fail = [&](std::string why) {
    audit.valid = false;
    audit.failure = std::move(why);
  };
  for (std::size_t t = 0; t < steps && audit.valid; ++t) {
    const Vertex from = trajectory.vertices[t];
    const Vertex to = trajectory.vertices[t + 1];
    if (part_of[t] >= 0) {
      if (remaining[from] != 0) fail("simple step at t=" + std::to_string(t) + " left a vertex with J nonempty");
      const bool part_begins = t == 0 || part_of[t - 1] != part_of[t];
      if (part_begins && !audit.spliced.empty() && audit.spliced.back() != from) {
        fail("simple part " + std::to_string(part_of[t] + 1) + " does not start where the previous one ended");
      }
      if (audit.spliced.empty()) audit.spliced.push_back(from);
      if (!g.find_edge(from, to)) fail("spliced vertices not adjacent at t=" + std::to_string(t));
      audit.spliced.push_back(to);
      ++audit.simple_steps;
    }
    const EdgeId e = trajectory.edges[t];
    if (!seen[e]) {
      seen[e] = 1;
      --remaining[g.edge(e).u];
      --remaining[g.edge(e).v];
    }
  }
  return audit;
}

// ---------------------------------------------------------------- escape / range

std::uint64_t escape_time(const Graph& g, std::span<const char> bad_set, Vertex start, Rng& rng) {
  require(bad_set.size() == g.vertex_count(), ErrorCode::InvalidParameter, "bad set must flag every vertex");
  require(start < g.vertex_count() && bad_set[start], ErrorCode::InvalidParameter, "start must lie in the bad set");
  require(std::find(bad_set.begin(), bad_set.end(), 0) != bad_set.end(), ErrorCode::NeverEscapes,
          "bad set contains every vertex");
  Vertex x = start;
  std::uint64_t t = 0;
  while (bad_set[x]) {
    x = g.other(uniform_incident(g, x, rng), x);
    ++t;
  }
  return t;
}

std::uint64_t escape_time(const Graph& g, std::span<const char> bad_set, Vertex start, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return escape_time(g, bad_set, start, rng);
}

std::vector<ExperimentResult> range_growth(const Graph& g, WalkKind kind, const Rule& rule,
                                           const std::vector<std::uint64_t>& t_values, std::size_t trials,
                                           std::uint64_t seed, int workers) {
  require(std::is_sorted(t_values.begin(), t_values.end()), ErrorCode::InvalidParameter,
          "t values must be sorted");
  require(rule.kind() != Rule::Kind::Custom, ErrorCode::InvalidParameter, "range growth takes built-in rules");
  const std::uint64_t horizon = t_values.empty() ? 0 : t_values.back();
  auto per_trial = run_trials(
      trials, workers, [&] { return WalkState(g, 0); },
      [&](std::size_t trial, WalkState& state) {
        state.reset(0);
        Rng rng = make_rng(seed, trial);
        std::vector<double> covered(t_values.size());
        std::size_t next = 0;
        for (std::uint64_t t = 0;; ++t) {
          while (next < t_values.size() && t_values[next] == t) {
            covered[next++] = static_cast<double>(state.traversed_count());
          }
          if (t == horizon) break;
          step(state, rule, rng, kind);
        }
        return covered;
      });
  std::vector<ExperimentResult> out;
  for (std::size_t k = 0; k < t_values.size(); ++k) {
    std::vector<double> col(trials);
    for (std::size_t i = 0; i < trials; ++i) col[i] = per_trial[i][k];
    out.push_back(summarize(col, seed));
  }
  return out;
}

void write_trajectory(std::ostream& out, const TrajectoryLog& trajectory, const Graph& g) {
  validate_trajectory(trajectory, g);
  std::vector<char> seen(g.edge_count(), 0);
  for (std::size_t i = 0; i < trajectory.edges.size(); ++i) {
    const EdgeId e = trajectory.edges[i];
    const char part = seen[e] ? 'S' : 'G';
    seen[e] = 1;
    out << i << ' ' << trajectory.vertices[i] << ' ' << trajectory.vertices[i + 1] << ' ' << e << ' ' << part << '\n';
  }
}

}  // namespace grw
