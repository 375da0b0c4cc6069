#include <set>
#include <sstream>
#include <tuple>

#include "doctest.h"
#include "grw/error.hpp"
#include "grw/mirror.hpp"

using namespace grw;

namespace {

constexpr Heading kAll[] = {Heading::E, Heading::W, Heading::N, Heading::S};
constexpr Mirror kMirrors[] = {Mirror::None, Mirror::NE_SW, Mirror::NW_SE};

Heading heading_between(Site a, Site b) {
  if (b.x == a.x + 1) return Heading::E;
  if (b.x == a.x - 1) return Heading::W;
  if (b.y == a.y + 1) return Heading::N;
  REQUIRE(b.y == a.y - 1);
  return Heading::S;
}

}  // namespace

TEST_CASE("reflection law") {
  CHECK(reflect(Mirror::NE_SW, Heading::E) == Heading::N);
  CHECK(reflect(Mirror::NE_SW, Heading::W) == Heading::S);
  CHECK(reflect(Mirror::NW_SE, Heading::E) == Heading::S);
  CHECK(reflect(Mirror::NW_SE, Heading::N) == Heading::W);
  for (Mirror m : kMirrors) {
    for (Heading h : kAll) {
      // Reflecting, reversing and reflecting again gives the reversed heading.
      CHECK(reflect(m, reverse(reflect(m, h))) == reverse(h));
      CHECK(reflect(m, reflect(m, h)) == h);
      CHECK(reflect(m, h) != reverse(h));
      CHECK(mirror_for_turn(h, reflect(m, h)) == m);
    }
  }
  for (Heading h : kAll) CHECK_THROWS_AS(mirror_for_turn(h, reverse(h)), Error);
  CHECK(to_char(Heading::S) == 'S');
}

TEST_CASE("mirror field fixes each site once") {
  MirrorField f;
  f.set({2, 3}, Mirror::NW_SE);
  f.set({2, 3}, Mirror::NW_SE);
  CHECK_THROWS_AS(f.set({2, 3}, Mirror::None), Error);
  Rng rng = make_rng(1);
  CHECK(f.get_or_sample({2, 3}, rng) == Mirror::NW_SE);
  CHECK(!f.get({0, 0}).has_value());
  std::set<Mirror> kinds;
  for (int i = 0; i < 300; ++i) kinds.insert(f.get_or_sample({i, -i}, rng));
  CHECK(kinds.size() == 3);
  CHECK(f.size() == 301);
}

TEST_CASE("closed box around a unit cell has period 4") {
  MirrorField f;
  f.set({1, 0}, Mirror::NE_SW);
  f.set({1, 1}, Mirror::NW_SE);
  f.set({0, 1}, Mirror::NE_SW);
  f.set({0, 0}, Mirror::NW_SE);
  auto run = run_particle(f, {0, 0}, Heading::E, 100);
  CHECK(run.periodic);
  CHECK(!run.truncated);
  CHECK(run.period == 4);
  CHECK(run.steps == 4);
  CHECK(run.trajectory.back() == Site{0, 0});
}

TEST_CASE("empty line is never periodic") {
  MirrorField f;
  for (int x = 1; x <= 50; ++x) f.set({x, 0}, Mirror::None);
  auto run = run_particle(f, {0, 0}, Heading::E, 50);
  CHECK(!run.periodic);
  CHECK(run.truncated);
  CHECK(run.trajectory.back() == Site{50, 0});
  CHECK_THROWS_AS(run_particle(f, {0, 0}, Heading::E, 51), Error);
}

TEST_CASE("a repeated state recurs after one period") {
  int found = 0;
  for (std::uint64_t s = 0; s < 200 && found < 20; ++s) {
    MirrorField f;
    Rng rng = make_rng(s);
    auto run = run_particle(f, {0, 0}, Heading::N, 2000, &rng);
    if (!run.periodic) continue;
    ++found;
    // The first state is on the cycle since the dynamics are invertible.
    CHECK(run.trajectory.back() == run.trajectory[run.trajectory.size() - 1 - run.period]);
    auto again = run_particle(f, {0, 0}, Heading::N, run.steps + run.period);
    REQUIRE(again.trajectory.size() >= run.steps + 1);
    for (std::size_t t = 0; t <= run.steps; ++t) CHECK(again.trajectory[t] == run.trajectory[t]);
    auto twice = run_particle(f, {0, 0}, Heading::N, 2 * run.period);
    CHECK(twice.period == run.period);
    CHECK(twice.trajectory[run.period] == Site{0, 0});
  }
  CHECK(found == 20);
}

TEST_CASE("field replay reproduces the trajectory") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    MirrorField f;
    Rng rng = make_rng(s, 7);
    auto first = run_particle(f, {0, 0}, Heading::W, 3000, &rng);
    auto replay = run_particle(f, {0, 0}, Heading::W, first.steps);
    CHECK(replay.trajectory == first.trajectory);
  }
}

TEST_CASE("coupled GRW and particle agree up to the first return") {
  std::uint64_t forced = 0;
  int returned = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    auto run = coupled_run(seed, 5000, true);
    CHECK(!run.diverged);
    CHECK(run.first_return == run.particle_first_return);
    forced += run.forced_moves;
    if (run.periodic) CHECK(run.first_return.has_value());
    if (!run.first_return) {
      CHECK(run.agree_until == 5000);
      continue;
    }
    ++returned;
    const std::uint64_t T = *run.first_return;
    CHECK(run.agree_until == T);
    REQUIRE(run.grw.size() == T + 1);
    CHECK(run.grw.back() == Site{0, 0});
    for (std::uint64_t t = 1; t < T; ++t) CHECK(!(run.grw[t] == Site{0, 0}));

    // Independent replay: mirrors read off GRW's turns at first visits, then
    // the particle is run deterministically on that field.
    MirrorField f;
    std::set<std::tuple<int, int>> seen{{0, 0}};
    std::set<std::tuple<int, int, int, int>> edges;
    for (std::uint64_t t = 1; t < T; ++t) {
      Site a = run.grw[t - 1], b = run.grw[t], c = run.grw[t + 1];
      // GRW never reuses an edge before the first return on Z^2.
      CHECK(edges.insert({std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)}).second);
      if (seen.insert({b.x, b.y}).second) f.set(b, mirror_for_turn(heading_between(a, b), heading_between(b, c)));
    }
    f.set({0, 0}, Mirror::None);
    auto particle = run_particle(f, {0, 0}, heading_between(run.grw[0], run.grw[1]), T);
    REQUIRE(particle.trajectory.size() >= T + 1);
    for (std::uint64_t t = 0; t <= T; ++t) CHECK(particle.trajectory[t] == run.grw[t]);
    for (std::uint64_t t = 0; t <= T; ++t) CHECK(run.particle[t] == run.grw[t]);
  }
  CHECK(returned > 500);
  CHECK(forced > 0);
}

TEST_CASE("periodicity of the continued particle") {
  int periodic = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto run = coupled_run(seed, 20000, true);
    if (!run.periodic) continue;
    ++periodic;
    // The orbit closes: the last recorded position is the origin and the
    // following step is the first one of the walk.
    CHECK(run.particle.back() == Site{0, 0});
  }
  CHECK(periodic > 0);
}

TEST_CASE("return campaign") {
  auto a = return_probability_campaign(2000, 100, 11, 1);
  auto b = return_probability_campaign(2000, 10000, 11, 3);
  CHECK(a.divergences == 0);
  CHECK(b.divergences == 0);
  CHECK(a.indicator_mismatches == 0);
  CHECK(b.indicator_mismatches == 0);
  CHECK(a.returned.mean <= b.returned.mean);
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    if (a.runs[i].first_return) CHECK(b.runs[i].first_return == a.runs[i].first_return);
  }
  CHECK(a.undecided_fraction == doctest::Approx(1.0 - a.returned.mean));
  auto serial = return_probability_campaign(2000, 10000, 11, 1);
  std::ostringstream x, y;
  write_mirror_rows(x, serial);
  write_mirror_rows(y, b);
  CHECK(x.str() == y.str());
  CHECK(x.str().find(",-1,") != std::string::npos);
}
