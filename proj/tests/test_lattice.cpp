#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "grw/error.hpp"
#include "grw/lattice.hpp"

using namespace grw;

namespace {

std::uint64_t origin_visits(const std::vector<std::int64_t>& traj, std::size_t d) {
  std::uint64_t n = 0;
  for (std::size_t t = 1; t < traj.size() / d; ++t) {
    bool zero = true;
    for (std::size_t a = 0; a < d; ++a) zero = zero && traj[t * d + a] == 0;
    n += zero;
  }
  return n;
}

}  // namespace

TEST_CASE("Z^1: GRW never returns and moves ballistically") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto r = run_lattice({.dimension = 1}, Rule::uniform_random(), seed, {.horizon = 5000});
    CHECK(r.return_count == 0);
    CHECK(std::abs(r.position[0]) == 5000);
    CHECK(r.distinct_edges == 5000);
    CHECK(r.stuck_count == 0);
  }
  std::uint64_t srw_returns = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    srw_returns +=
        run_lattice({.dimension = 1}, Rule::uniform_random(), seed, {.kind = WalkKind::Simple, .horizon = 5000})
            .return_count;
  }
  CHECK(srw_returns > 0);
}

TEST_CASE("lattice GRW bookkeeping matches an independent replay") {
  for (int d : {2, 3}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      LatticeSpec spec{.dimension = d};
      auto r = run_lattice(spec, Rule::uniform_random(), seed, {.horizon = 20000, .record_trajectory = true});
      REQUIRE(r.trajectory.has_value());
      CHECK(!r.truncated);
      CHECK(r.steps == 20000);
      CHECK(r.greedy_steps + r.simple_steps == r.steps);
      CHECK(r.distinct_edges == r.greedy_steps);
      CHECK(r.closure_violations == 0);
      CHECK(r.short_part_violations == 0);
      CHECK(r.return_count == origin_visits(*r.trajectory, static_cast<std::size_t>(d)));
      auto audit = audit_lattice_trajectory(spec, *r.trajectory);
      CHECK_MESSAGE(audit.valid, audit.failure);
      CHECK(audit.simple_steps == r.simple_steps);
      CHECK(audit.parts == r.stuck_count);
    }
  }
  // The least-direction rule is deterministic inside greedy parts.
  auto a = run_lattice({.dimension = 2}, Rule::least_index(), 1, {.horizon = 3000, .record_trajectory = true});
  auto audit = audit_lattice_trajectory({.dimension = 2}, *a.trajectory);
  CHECK_MESSAGE(audit.valid, audit.failure);
  // From a fresh origin, least goes +x first.
  CHECK((*a.trajectory)[2] == 1);
  CHECK((*a.trajectory)[3] == 0);
}

TEST_CASE("lattice audit rejects tampered trajectories") {
  LatticeSpec spec{.dimension = 2};
  auto r = run_lattice(spec, Rule::uniform_random(), 3, {.horizon = 2000, .record_trajectory = true});
  auto bad = *r.trajectory;
  bad[2] += 1;  // X_1 no longer adjacent to X_0
  CHECK(!audit_lattice_trajectory(spec, bad).valid);
  // A greedy step that repeats an edge: 0 -> e1 -> 0 with fresh edges left at e1.
  std::vector<std::int64_t> repeat{0, 0, 1, 0, 0, 0};
  auto audit = audit_lattice_trajectory(spec, repeat);
  CHECK(!audit.valid);
  CHECK(audit.failure.find("repeated") != std::string::npos);
}

TEST_CASE("deleted-edge variant respects the per-box budget") {
  for (double eps : {0.25, 0.5, 0.9}) {
    LatticeSpec spec{.dimension = 3, .epsilon = eps, .deletion_seed = 17};
    auto dels = lattice_deletions(spec, 4000);
    REQUIRE(!dels.empty());
    std::vector<std::int64_t> inner_radius;
    for (const auto& del : dels) {
      std::int64_t m = 0;
      for (int a = 0; a < 3; ++a) {
        m = std::max(m, std::abs(del.lower[a]));
        m = std::max(m, std::abs(del.lower[a] + (a == del.axis ? 1 : 0)));
      }
      CHECK(m == del.radius);
      inner_radius.push_back(m);
    }
    std::sort(inner_radius.begin(), inner_radius.end());
    for (std::size_t i = 0; i < inner_radius.size(); ++i) {
      // i + 1 deletions lie in the box of radius inner_radius[i].
      const double budget = std::floor(std::pow(double(inner_radius[i]), 1.0 - eps) + 1e-9);
      CHECK(double(i + 1) <= budget);
    }
    const double top = std::floor(std::pow(4000.0, 1.0 - eps) + 1e-9);
    CHECK(double(dels.size()) == top);
  }
  LatticeSpec spec{.dimension = 2, .epsilon = 0.3, .deletion_seed = 2};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto r = run_lattice(spec, Rule::uniform_random(), seed, {.horizon = 20000, .record_trajectory = true});
    CHECK(!r.even_degree);
    auto audit = audit_lattice_trajectory(spec, *r.trajectory);
    CHECK_MESSAGE(audit.valid, audit.failure);
  }
}

TEST_CASE("lattice caps, determinism and errors") {
  auto capped = run_lattice({.dimension = 3}, Rule::uniform_random(), 1, {.horizon = 1000, .max_vertices = 10});
  CHECK(capped.truncated);
  CHECK(capped.distinct_vertices == 10);

  auto x = run_lattice({.dimension = 3}, Rule::uniform_random(), 99, {.horizon = 50000, .record_trajectory = true});
  auto y = run_lattice({.dimension = 3}, Rule::uniform_random(), 99, {.horizon = 50000, .record_trajectory = true});
  CHECK(*x.trajectory == *y.trajectory);

  CHECK_THROWS_AS(run_lattice({.dimension = 0}, Rule::uniform_random(), 1, {.horizon = 10}), Error);
  CHECK_THROWS_AS(run_lattice({.dimension = 1, .epsilon = 0.5}, Rule::uniform_random(), 1, {.horizon = 10}), Error);
  CHECK_THROWS_AS(run_lattice({.dimension = 2}, Rule::uniform_random(), 1, {.horizon = 0}), Error);
  CHECK_THROWS_AS(run_lattice({.dimension = 2}, Rule::scripted({0}), 1, {.horizon = 10}), Error);
  CHECK_THROWS_AS(
      run_lattice({.dimension = 2}, Rule::uniform_random(), 1, {.kind = WalkKind::VertexGreedy, .horizon = 10}),
      Error);
}
