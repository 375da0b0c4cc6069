#include "grw/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>
#include <absl/container/flat_hash_map.h>

#include "grw/error.hpp"

namespace grw {

namespace {

using Mask = std::uint32_t;

struct Move {
  double p;
  Vertex to;
  Mask mask;
};

// Edges the rule may take among the candidates: all of them for a uniform
// rule, otherwise the single preferred one.
std::vector<EdgeId> rule_support(const Rule& rule, std::vector<EdgeId> candidates) {
  switch (rule.kind()) {
    case Rule::Kind::UniformRandom:
      return candidates;
    case Rule::Kind::LeastIndex:
      return {*std::min_element(candidates.begin(), candidates.end())};
    case Rule::Kind::Scripted:
      return {*std::min_element(candidates.begin(), candidates.end(),
                                [&](EdgeId a, EdgeId b) { return rule.rank(a) < rule.rank(b); })};
    case Rule::Kind::Custom:
      break;
  }
  throw Error(ErrorCode::InvalidParameter, "history-dependent custom rules have no finite Markov chain");
}

// Expected absorption time of the chain on (vertex, mask) from the start
// state. Masks only gain bits, so blocks of equal mask are solved from the
// largest popcount down, each against the already-known values of strict
// supersets.
template <class Absorbing, class Moves>
OracleSolution solve_chain(Vertex start, Mask start_mask, std::size_t n, Absorbing absorbing, Moves moves) {
  struct State {
    Vertex v;
    Mask mask;
  };
  auto key = [](Vertex v, Mask m) { return (std::uint64_t{m} << 32) | v; };

  std::vector<State> states{{start, start_mask}};
  absl::flat_hash_map<std::uint64_t, std::uint32_t> index;
  index.emplace(key(start, start_mask), 0);
  std::vector<std::uint32_t> offset{0};
  std::vector<std::pair<double, std::uint32_t>> edges;
  std::vector<Move> buf;

  for (std::size_t i = 0; i < states.size(); ++i) {
    const State s = states[i];
    if (!absorbing(s.mask)) {
      buf.clear();
      moves(s.v, s.mask, buf);
      for (const Move& mv : buf) {
        auto [it, fresh] = index.try_emplace(key(mv.to, mv.mask), static_cast<std::uint32_t>(states.size()));
        if (fresh) {
          require(states.size() < kOracleMaxStates, ErrorCode::StateSpaceExceeded, "reachable state count too large");
          states.push_back({mv.to, mv.mask});
        }
        edges.emplace_back(mv.p, it->second);
      }
    }
    offset.push_back(static_cast<std::uint32_t>(edges.size()));
  }

  absl::flat_hash_map<Mask, std::vector<std::uint32_t>> blocks;
  for (std::uint32_t i = 0; i < states.size(); ++i) {
    if (!absorbing(states[i].mask)) blocks[states[i].mask].push_back(i);
  }
  std::vector<Mask> order;
  order.reserve(blocks.size());
  for (const auto& [m, _] : blocks) order.push_back(m);
  std::sort(order.begin(), order.end(), [](Mask a, Mask b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa > pb : a < b;
  });

  std::vector<double> value(states.size(), 0.0);
  std::vector<int> local(n, -1);
  double residual = 0.0;
  for (Mask m : order) {
    const auto& members = blocks[m];
    const auto k = static_cast<Eigen::Index>(members.size());
    for (Eigen::Index r = 0; r < k; ++r) local[states[members[r]].v] = static_cast<int>(r);
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(k, k);
    Eigen::VectorXd b = Eigen::VectorXd::Ones(k);
    for (Eigen::Index r = 0; r < k; ++r) {
      const std::uint32_t i = members[r];
      for (std::uint32_t j = offset[i]; j < offset[i + 1]; ++j) {
        const auto [p, to] = edges[j];
        if (states[to].mask == m) {
          a(r, local[states[to].v]) -= p;
        } else {
          b(r) += p * value[to];
        }
      }
    }
    const Eigen::VectorXd x = a.partialPivLu().solve(b);
    const double res = (a * x - b).lpNorm<Eigen::Infinity>();
    require(res <= kOracleTolerance * (1.0 + b.lpNorm<Eigen::Infinity>()), ErrorCode::Validation,
            "oracle solve residual above tolerance");
    residual = std::max(residual, res);
    for (Eigen::Index r = 0; r < k; ++r) {
      value[members[r]] = x(r);
      local[states[members[r]].v] = -1;
    }
  }
  return {value[0], states.size(), residual};
}

void require_movable(const Graph& g, Vertex start) {
  require(start < g.vertex_count(), ErrorCode::InvalidParameter, "start vertex out of range");
  require(g.is_connected(), ErrorCode::InvalidParameter, "oracle needs a connected graph");
}

Mask edge_endpoints(const Graph& g, Vertex start, Mask edges) {
  Mask seen = Mask{1} << start;
  for (Mask rest = edges; rest != 0; rest &= rest - 1) {
    const Edge& e = g.edge(static_cast<EdgeId>(std::countr_zero(rest)));
    seen |= (Mask{1} << e.u) | (Mask{1} << e.v);
  }
  return seen;
}

// Moves of GRW / SRW on (vertex, traversed-edge mask).
auto edge_mask_moves(const Graph& g, WalkKind kind, const Rule& rule) {
  return [&g, kind, &rule](Vertex v, Mask mask, std::vector<Move>& out) {
    std::vector<EdgeId> fresh;
    if (kind == WalkKind::Greedy) {
      for (const Incidence& inc : g.incident(v)) {
        if (!(mask >> inc.edge & 1)) fresh.push_back(inc.edge);
      }
    }
    if (!fresh.empty()) {
      const auto support = rule_support(rule, std::move(fresh));
      for (EdgeId e : support) out.push_back({1.0 / support.size(), g.other(e, v), mask | Mask{1} << e});
      return;
    }
    const double p = 1.0 / g.degree(v);
    for (const Incidence& inc : g.incident(v)) out.push_back({p, inc.neighbor, mask | Mask{1} << inc.edge});
  };
}

}  // namespace

OracleSolution solve_edge_cover(const Graph& g, WalkKind kind, Vertex start, const Rule& rule) {
  require(kind != WalkKind::VertexGreedy, ErrorCode::InvalidParameter, "edge-cover oracle supports grw and srw");
  require(g.edge_count() <= kOracleMaxEdges, ErrorCode::StateSpaceExceeded, "edge-cover oracle needs |E| <= 20");
  require_movable(g, start);
  require(g.degree(start) > 0, ErrorCode::NoMove, "start vertex has no incident edge");
  if (kind == WalkKind::Greedy) rule_support(rule, {0});
  const Mask full = g.edge_count() == 32 ? ~Mask{0} : (Mask{1} << g.edge_count()) - 1;
  return solve_chain(start, 0, g.vertex_count(), [full](Mask m) { return m == full; },
                     edge_mask_moves(g, kind, rule));
}

double exact_edge_cover_expectation(const Graph& g, WalkKind kind, Vertex start, const Rule& rule) {
  return solve_edge_cover(g, kind, start, rule).expectation;
}

OracleSolution solve_vertex_cover(const Graph& g, WalkKind kind, Vertex start, const Rule& rule) {
  require_movable(g, start);
  const std::size_t n = g.vertex_count();
  if (n == 1) return {0.0, 1, 0.0};
  require(n <= kOracleMaxVertices, ErrorCode::StateSpaceExceeded, "vertex-cover oracle needs n <= 20");
  const Mask all = (Mask{1} << n) - 1;

  if (kind == WalkKind::Greedy) {
    require(g.edge_count() <= kOracleMaxEdges, ErrorCode::StateSpaceExceeded,
            "greedy vertex-cover oracle needs |E| <= 20");
    rule_support(rule, {0});
    return solve_chain(start, 0, n, [&](Mask m) { return edge_endpoints(g, start, m) == all; },
                       edge_mask_moves(g, kind, rule));
  }
  if (kind == WalkKind::VertexGreedy) rule_support(rule, {0});
  auto moves = [&g, kind, &rule](Vertex v, Mask seen, std::vector<Move>& out) {
    std::vector<EdgeId> fresh;
    if (kind == WalkKind::VertexGreedy) {
      for (const Incidence& inc : g.incident(v)) {
        if (!(seen >> inc.neighbor & 1)) fresh.push_back(inc.edge);
      }
    }
    if (!fresh.empty()) {
      const auto support = rule_support(rule, std::move(fresh));
      for (EdgeId e : support) {
        const Vertex w = g.other(e, v);
        out.push_back({1.0 / support.size(), w, seen | Mask{1} << w});
      }
      return;
    }
    const double p = 1.0 / g.degree(v);
    for (const Incidence& inc : g.incident(v)) out.push_back({p, inc.neighbor, seen | Mask{1} << inc.neighbor});
  };
  return solve_chain(start, Mask{1} << start, n, [all](Mask m) { return m == all; }, moves);
}

double exact_vertex_cover_expectation(const Graph& g, WalkKind kind, Vertex start, const Rule& rule) {
  return solve_vertex_cover(g, kind, start, rule).expectation;
}

namespace {

// Expected SRW steps to leave `inside`, for every vertex of it.
Eigen::VectorXd absorption_times(const Graph& g, const std::vector<char>& inside) {
  std::vector<int> local(g.vertex_count(), -1);
  Eigen::Index k = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (inside[v]) local[v] = static_cast<int>(k++);
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(k, k);
  Eigen::VectorXd b = Eigen::VectorXd::Ones(k);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!inside[v]) continue;
    const double p = 1.0 / g.degree(v);
    for (const Incidence& inc : g.incident(v)) {
      if (inside[inc.neighbor]) a(local[v], local[inc.neighbor]) -= p;
    }
  }
  Eigen::VectorXd x = a.partialPivLu().solve(b);
  const double res = (a * x - b).lpNorm<Eigen::Infinity>();
  require(res <= kOracleTolerance * (1.0 + x.lpNorm<Eigen::Infinity>()), ErrorCode::Validation,
          "oracle solve residual above tolerance");
  Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.vertex_count()));
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (inside[v]) full(v) = x(local[v]);
  }
  return full;
}

}  // namespace

double exact_hitting_time(const Graph& g, Vertex from, Vertex to) {
  require(from < g.vertex_count() && to < g.vertex_count(), ErrorCode::InvalidParameter, "vertex out of range");
  require(g.is_connected(), ErrorCode::InvalidParameter, "hitting time needs a connected graph");
  if (from == to) return 0.0;
  std::vector<char> inside(g.vertex_count(), 1);
  inside[to] = 0;
  return absorption_times(g, inside)(from);
}

double exact_escape_expectation(const Graph& g, std::span<const char> bad_set, Vertex v) {
  require(bad_set.size() == g.vertex_count(), ErrorCode::InvalidParameter, "bad set size must equal n");
  require(v < g.vertex_count() && bad_set[v], ErrorCode::InvalidParameter, "start must lie in the bad set");
  require(g.is_connected(), ErrorCode::InvalidParameter, "escape time needs a connected graph");
  require(std::find(bad_set.begin(), bad_set.end(), 0) != bad_set.end(), ErrorCode::NeverEscapes,
          "bad set covers every vertex");
  std::vector<char> inside(bad_set.begin(), bad_set.end());
  return absorption_times(g, inside)(v);
}

std::vector<RegressionEntry> read_regression(std::istream& in) {
  std::vector<RegressionEntry> out;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    RegressionEntry e;
    std::string extra;
    if (!(fields >> e.graph_id >> e.kind >> e.start >> e.expectation) || (fields >> extra)) {
      throw Error(ErrorCode::ParseError, "regression line " + std::to_string(lineno) + ": expected 4 fields");
    }
    out.push_back(std::move(e));
  }
  return out;
}

void write_regression(std::ostream& out, const RegressionEntry& entry) {
  out << entry.graph_id << ' ' << entry.kind << ' ' << entry.start << ' ' << std::setprecision(15)
      << entry.expectation << '\n';
}

}  // namespace grw
