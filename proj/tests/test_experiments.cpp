#include <cmath>
#include <sstream>

#include "doctest.h"
#include "grw/error.hpp"
#include "grw/experiments.hpp"
#include "grw/generators.hpp"
#include "grw/oracle.hpp"

using namespace grw;

TEST_CASE("cover campaign: per-trial identities on even and odd graphs") {
  std::vector<std::pair<std::string, Graph>> graphs{{"K5", gen_complete(5)},
                                                    {"K6", gen_complete(6)},
                                                    {"Q4", gen_hypercube(4)},
                                                    {"T5x5", gen_torus({5, 5})},
                                                    {"C4xK3", gen_product_k3(gen_cycle(4))}};
  for (const auto& [id, g] : graphs) {
    auto c = cover_campaign("t", id, g, Rule::uniform_random(), 300, 4);
    CHECK(c.trials.size() == 300);
    CHECK(c.identity_failures() == 0);
    CHECK(c.greedy_total_failures() == 0);
    CHECK(c.chain_failures() == 0);
    CHECK(c.closure_failures() == 0);
    CHECK(c.short_part_failures() == 0);
    CHECK((c.parts_checked() > 0) == g.all_degrees_even());
    for (const auto& t : c.trials) CHECK(t.cover_time >= g.edge_count());
  }
  auto tri = cover_campaign("t", "K3", gen_complete(3), Rule::uniform_random(), 100, 1);
  CHECK(tri.overhead.mean == 0.0);
  CHECK(tri.overhead.variance == 0.0);
}

TEST_CASE("cover campaign: parallel kernel reproduces the serial reference") {
  Graph g = gen_random_regular(60, 4, 5, true);
  auto serial = cover_campaign("t", "rr", g, Rule::uniform_random(), 64, 9, {.workers = 1});
  for (int w : {2, 3, 8}) {
    auto par = cover_campaign("t", "rr", g, Rule::uniform_random(), 64, 9, {.workers = w});
    std::ostringstream a, b;
    write_trial_rows(a, serial);
    write_trial_rows(b, par);
    CHECK(a.str() == b.str());
    CHECK(serial.overhead.mean == par.overhead.mean);
    CHECK(serial.overhead.variance == par.overhead.variance);
  }
}

TEST_CASE("cover campaign: truncation is counted and excluded") {
  auto c = cover_campaign("t", "K8", gen_complete(8), Rule::uniform_random(), 50, 2,
                          {.kind = WalkKind::Simple, .cap = 40});
  CHECK(c.overhead.truncated > 0);
  CHECK(c.overhead.trials + c.overhead.truncated == 50);
}

TEST_CASE("CI half-width shrinks like 1/sqrt(trials)") {
  Graph k8 = gen_complete(8);
  auto small = cover_campaign("t", "K8", k8, Rule::uniform_random(), 4000, 3);
  auto large = cover_campaign("t", "K8", k8, Rule::uniform_random(), 16000, 3);
  CHECK(large.overhead.ci_half_width / small.overhead.ci_half_width == doctest::Approx(0.5).epsilon(0.1));
  CHECK(small.overhead.ci_half_width ==
        doctest::Approx(1.96 * std::sqrt(small.overhead.variance / 4000.0)).epsilon(1e-12));
}

TEST_CASE("CSV rows follow the schema") {
  auto c = cover_campaign("camp", "K4", gen_complete(4), Rule::least_index(), 3, 11);
  std::ostringstream out;
  write_trial_rows(out, c);
  std::istringstream in(out.str());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 11);
    CHECK(line.rfind("camp,K4,4,6,grw,least,11,", 0) == 0);
  }
  CHECK(rows == 3);
  const std::string header = kTrialCsvHeader;
  CHECK(std::count(header.begin(), header.end(), ',') == 11);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("overhead campaign and scaling fit") {
  auto fit = overhead_campaign(Family::Complete, {8, 16, 32}, {}, Rule::uniform_random(), 400, 5, 0);
  REQUIRE(fit.campaigns.size() == 3);
  CHECK(fit.n == std::vector<std::size_t>{8, 16, 32});
  REQUIRE(fit.slope.has_value());
  CHECK(*fit.slope > 0.0);
  CHECK(fit.residuals.size() == 3);
  for (double r : fit.ratio) CHECK(r > 0.0);

  auto tri = overhead_campaign(Family::Complete, {3}, {}, Rule::uniform_random(), 50, 5, 0);
  CHECK(tri.mean_overhead[0] == 0.0);
  CHECK(!tri.slope.has_value());

  CHECK(make_family_member(Family::HammingLe, 3, {.ell = 2}).graph.degree(0) == 6);
  CHECK(make_family_member(Family::ProductK3, 10, {}).graph.vertex_count() == 30);
  CHECK(make_family_member(Family::Torus, 4, {.torus_dimension = 3}).graph.vertex_count() == 64);
  CHECK(make_family_member(Family::Tree, 2, {.degree = 3}).graph.vertex_count() == 10);
  CHECK_THROWS_AS(parse_family("petersen"), Error);
}

TEST_CASE("escape geometry") {
  auto c = escape_geometry_check(5, 2, 100000, 7);
  CHECK(c.formula_mean == doctest::Approx(4.0 / 3.0));
  CHECK(c.exact_mean == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(c.mean_relative_error < 0.02);
  CHECK(c.max_survival_gap < 0.01);

  auto full = escape_geometry_check(6, 5, 20000, 8);
  CHECK(full.formula_mean == doctest::Approx(5.0));
  CHECK(full.mean_relative_error < 0.03);

  CHECK(survival_gap({0.5, 0.25}, 0.5) == doctest::Approx(0.0));
  CHECK(empirical_survival({1, 2, 3, 3}, 3) == std::vector<double>{0.75, 0.5, 0.0});
  CHECK_THROWS_AS(escape_geometry_check(5, 5, 10, 1), Error);
}

TEST_CASE("tree bound check") {
  auto star = tree_bound_check(gen_tree({3}), 2000, 1);
  CHECK(star.subtree_sum == 0);
  CHECK(star.upper == 3.0);
  CHECK(star.campaign.overhead.mean == 2.0);
  CHECK(star.campaign.overhead.variance == 0.0);
  CHECK(star.pass);

  auto small = tree_bound_check(gen_regular_tree(3, 3), 4000, 2);
  CHECK(small.pass);
  CHECK(small.lower < small.upper);

  CHECK_THROWS_AS(tree_bound_check(RootedTree(gen_path(4), 0), 10, 1), Error);
}

TEST_CASE("hypercube coupling check") {
  auto c2 = hypercube_coupling_check(2, 500, 3);
  CHECK(c2.grw.overhead.mean == 0.0);
  CHECK(c2.srw_vertex_cover.mean > 0.0);
  CHECK(c2.coupling_pass);
  auto c4 = hypercube_coupling_check(4, 3000, 4);
  CHECK(c4.coupling_pass);
  CHECK(c4.linear_pass);
  CHECK_THROWS_AS(hypercube_coupling_check(3, 10, 1), Error);
}

TEST_CASE("girth bound check") {
  auto t = girth_bound_check("T4x4", gen_torus({4, 4}), Rule::uniform_random(), 500, 1);
  CHECK(t.girth == 4);
  CHECK(t.pass);
  auto rr = girth_bound_check("RR", gen_random_regular(200, 4, 1, true), Rule::uniform_random(), 100, 2);
  CHECK(rr.spectral.converged);
  CHECK(rr.implied_constant > 0.0);
  CHECK_THROWS_AS(girth_bound_check("K4", gen_complete(4), Rule::uniform_random(), 10, 1), Error);
}

TEST_CASE("adversarial lower bound check on a small expander") {
  Graph h = gen_random_regular(30, 4, 3, true);
  auto c = adversarial_lower_bound_check("RR30", h, 300, 5);
  CHECK(c.n == 90);
  CHECK(c.residue_failures == 0);
  CHECK(c.first_part_failures == 0);
  CHECK(c.adversarial.identity_failures() == 0);
  CHECK(c.adversarial.overhead.mean > c.random.overhead.mean);
  CHECK(c.ratio > 0.0);
}

TEST_CASE("transience campaign") {
  auto z1 = transience_campaign({.dimension = 1}, WalkKind::Greedy, Rule::uniform_random(), 2000, 40, 1, 5);
  CHECK(z1.returns.mean == 0.0);
  CHECK(z1.tail_fraction(0) == 0.0);
  CHECK(z1.audited() == 5);
  CHECK(z1.audit_failures() == 0);

  auto z2 = transience_campaign({.dimension = 2}, WalkKind::Greedy, Rule::uniform_random(), 5000, 40, 2, 10);
  CHECK(z2.audited() == 10);
  CHECK(z2.audit_failures() == 0);
  CHECK(z2.closure_violations() == 0);
  auto z2p = transience_campaign({.dimension = 2}, WalkKind::Greedy, Rule::uniform_random(), 5000, 40, 2, 0, 3);
  std::ostringstream a, b;
  write_transience_rows(a, "x", z2);
  write_transience_rows(b, "x", z2p);
  CHECK(a.str() == b.str());
}

TEST_CASE("range ratio campaign") {
  auto rows = range_ratio_campaign(gen_torus({8, 8}), {1, 10, 50}, 2000, 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].ratio == 1.0);
  CHECK(rows[0].ratio_ci_half_width == 0.0);
  for (const auto& r : rows) CHECK(r.pass);
  CHECK(rows[2].ratio > 1.0);
  CHECK_THROWS_AS(range_ratio_campaign(gen_complete(4), {1}, 10, 1), Error);
}
