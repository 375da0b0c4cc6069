#include "grw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "grw/error.hpp"
#include "grw/random.hpp"

namespace grw {

std::optional<int> girth(const Graph& g) {
  const std::size_t n = g.vertex_count();
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(n, -1);
  std::vector<EdgeId> via(n, 0);
  std::vector<Vertex> queue;
  queue.reserve(n);
  for (Vertex root = 0; root < n; ++root) {
    queue.clear();
    queue.push_back(root);
    dist[root] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex v = queue[head];
      // No shorter cycle can be closed beyond this depth.
      if (2 * dist[v] >= best) break;
      for (const Incidence& inc : g.incident(v)) {
        if (v != root && inc.edge == via[v]) continue;
        if (dist[inc.neighbor] < 0) {
          dist[inc.neighbor] = dist[v] + 1;
          via[inc.neighbor] = inc.edge;
          queue.push_back(inc.neighbor);
        } else {
          best = std::min(best, dist[v] + dist[inc.neighbor] + 1);
        }
      }
    }
    for (Vertex v : queue) dist[v] = -1;
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

namespace {

void apply_normalized(const Graph& g, double inv_degree, const std::vector<double>& x, std::vector<double>& y) {
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    double s = 0.0;
    for (const Incidence& inc : g.incident(v)) s += x[inc.neighbor];
    y[v] = s * inv_degree;
  }
}

void remove_mean(std::vector<double>& x) {
  double mean = 0.0;
  for (double xi : x) mean += xi;
  mean /= static_cast<double>(x.size());
  for (double& xi : x) xi -= mean;
}

double norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double xi : x) s += xi * xi;
  return std::sqrt(s);
}

}  // namespace

SpectralEstimate spectral_radius(const Graph& g, double tolerance, std::uint64_t max_iterations) {
  require(tolerance > 0.0 && max_iterations > 0, ErrorCode::InvalidParameter, "bad power-iteration limits");
  require(g.vertex_count() >= 2 && g.is_regular() && g.degree(0) > 0, ErrorCode::InvalidParameter,
          "spectral radius needs a regular graph of positive degree");
  require(g.is_connected(), ErrorCode::InvalidParameter, "spectral radius needs a connected graph");

  const std::size_t n = g.vertex_count();
  const double inv_degree = 1.0 / static_cast<double>(g.degree(0));
  // Fixed start vector so the estimate is reproducible.
  Rng rng = make_rng(0x5eed5eedULL);
  std::vector<double> x(n), tmp(n), y(n);
  for (double& xi : x) xi = static_cast<double>(uniform_below(rng, 1u << 30)) / (1u << 30) - 0.5;
  remove_mean(x);
  double nx = norm(x);
  for (double& xi : x) xi /= nx;

  SpectralEstimate est;
  for (std::uint64_t it = 1; it <= max_iterations; ++it) {
    apply_normalized(g, inv_degree, x, tmp);
    apply_normalized(g, inv_degree, tmp, y);
    remove_mean(y);
    double mu = 0.0;
    for (std::size_t i = 0; i < n; ++i) mu += x[i] * y[i];
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res += (y[i] - mu * x[i]) * (y[i] - mu * x[i]);
    est.iterations = it;
    est.residual = std::sqrt(res);
    est.lambda = std::sqrt(std::clamp(mu, 0.0, 1.0));
    const double ny = norm(y);
    if (est.residual <= tolerance || ny == 0.0) {
      est.converged = true;
      if (ny == 0.0) est.residual = 0.0;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
  }
  return est;
}

std::vector<EdgeId> eulerian_circuit(const Graph& g, Vertex start) {
  require(start < g.vertex_count(), ErrorCode::InvalidParameter, "start vertex out of range");
  require(g.all_degrees_even(), ErrorCode::NotEulerian, "graph has a vertex of odd degree");

  std::vector<char> used(g.edge_count(), 0);
  std::vector<std::size_t> cursor(g.vertex_count(), 0);
  // Stack of (vertex, edge used to reach it).
  std::vector<std::pair<Vertex, EdgeId>> stack{{start, 0}};
  std::vector<EdgeId> circuit;
  circuit.reserve(g.edge_count());
  while (!stack.empty()) {
    const Vertex v = stack.back().first;
    auto inc = g.incident(v);
    std::size_t& c = cursor[v];
    while (c < inc.size() && used[inc[c].edge]) ++c;
    if (c == inc.size()) {
      if (stack.size() > 1) circuit.push_back(stack.back().second);
      stack.pop_back();
    } else {
      used[inc[c].edge] = 1;
      stack.push_back({inc[c].neighbor, inc[c].edge});
    }
  }
  require(circuit.size() == g.edge_count(), ErrorCode::InvalidParameter,
          "edges are not connected to the start vertex");
  std::reverse(circuit.begin(), circuit.end());
  return circuit;
}

}  // namespace grw
