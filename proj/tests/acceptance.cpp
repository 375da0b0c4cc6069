// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "grw/error.hpp"
#include "grw/experiments.hpp"
#include "grw/generators.hpp"
#include "grw/graph_io.hpp"
#include "grw/mirror.hpp"
#include "grw/oracle.hpp"

namespace fs = std::filesystem;
using namespace grw;

namespace {

// Pinned after measuring adversarial overhead / (n ln n) on random 4-regular
// bases with 50, 100 and 200 vertices: 0.61 to 0.67 over three graph seeds.
constexpr double kAdversarialRatioFloor = 0.5;

int failures = 0;

void criterion(int id, const std::string& name, const std::function<bool(std::ostream&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what() << '\n';
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << "  " << std::setw(2) << id << "  " << name << "  (" << std::fixed
            << std::setprecision(1) << secs << " s)\n";
  std::cout.unsetf(std::ios::fixed);
  std::istringstream lines(detail.str());
  std::string line;
  while (std::getline(lines, line)) std::cout << "      " << line << '\n';
  std::cout.flush();
}

Graph named(const std::string& id) { return load_graph_file(std::string(GRW_TEST_DATA_DIR) + "/graphs/" + id + ".edges"); }

bool run_cli(const std::string& args) {
  const std::string cmd = std::string(GRW_CLI_PATH) + " " + args + " > /dev/null";
  return std::system(cmd.c_str()) == 0;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main() {
  std::cout << std::setprecision(6);

  criterion(1, "oracle equivalence, GRW-RAND Monte Carlo vs exact", [](std::ostream& d) {
    bool ok = true;
    for (const std::string id : {"triangle", "P3", "P4", "star3", "C5", "K4", "Q2"}) {
      const Graph g = named(id);
      const double exact = exact_edge_cover_expectation(g, WalkKind::Greedy, 0);
      auto c = cover_campaign("acc1", id, g, Rule::uniform_random(), 100000, 101);
      const double se = c.cover.standard_error();
      // The 1e-12 slack only absorbs summation rounding on zero-variance graphs.
      const bool pass = std::abs(c.cover.mean - exact) <= 3.0 * se + 1e-12;
      ok = ok && pass;
      d << id << ": mean " << c.cover.mean << " exact " << exact << " se " << se << (pass ? "" : "  <--") << '\n';
    }
    return ok;
  });

  criterion(2, "forced circuits", [](std::ostream& d) {
    struct Case {
      std::string id;
      Graph g;
      Vertex start;
      std::uint64_t expect;
    };
    bool ok = true;
    for (const Case& k : {Case{"triangle", gen_cycle(3), 0, 3}, Case{"C4", gen_cycle(4), 0, 4},
                          Case{"star3 center", gen_star(3), 0, 5}}) {
      auto c = cover_campaign("acc2", k.id, k.g, Rule::uniform_random(), 10000, 102, {.start = k.start});
      std::size_t hits = 0;
      for (const auto& t : c.trials) hits += t.cover_time == k.expect;
      ok = ok && hits == 10000 && c.cover.variance == 0.0;
      d << k.id << ": C_E = " << k.expect << " in " << hits << "/10000, variance " << c.cover.variance << '\n';
    }
    return ok;
  });

  criterion(3, "clique overhead / (n ln n)", [](std::ostream& d) {
    auto fit = overhead_campaign(Family::Complete, {64, 128, 256, 512}, {}, Rule::uniform_random(), 1000, 103);
    bool ok = true;
    for (std::size_t i = 0; i < fit.n.size(); ++i) {
      ok = ok && fit.ratio[i] <= 2.0;
      d << "K" << fit.n[i] << ": mean overhead " << fit.mean_overhead[i] << " ratio " << fit.ratio[i] << '\n';
    }
    const bool trend = fit.ratio.back() <= fit.ratio.front() + 0.1;
    d << "ratio(512) - ratio(64) = " << fit.ratio.back() - fit.ratio.front() << " (<= 0.1 required)\n";
    if (fit.slope) d << "log-log slope " << *fit.slope << '\n';
    return ok && trend;
  });

  criterion(4, "escape geometry on K_101", [](std::ostream& d) {
    // With |B| = m the escape probability is (n - m)/(n - 1): 51/100 for m = 50.
    // The targets 2.0 and Geometric(1/2) are exact for m = 51, so both sizes are
    // checked against their own formula and the m = 51 run against the literal
    // targets.
    auto e50 = escape_geometry_check(101, 50, 100000, 104);
    auto e51 = escape_geometry_check(101, 51, 100000, 105);
    const bool f50 = e50.mean_relative_error <= 0.02 && e50.max_survival_gap <= 0.01;
    const double lit_mean_err = std::abs(e51.escape.mean - 2.0) / 2.0;
    const double lit_gap = survival_gap(e51.empirical_survival, 0.5);
    const bool f51 = lit_mean_err <= 0.02 && lit_gap <= 0.01 && e51.formula_mean == 2.0;
    d << "m=50: mean " << e50.escape.mean << " formula " << e50.formula_mean << " exact " << e50.exact_mean
      << " rel err " << e50.mean_relative_error << " survival gap vs Geom(" << e50.success_probability << ") "
      << e50.max_survival_gap << '\n';
    d << "m=51: mean " << e51.escape.mean << " vs 2.0 rel err " << lit_mean_err << ", survival gap vs Geom(0.5) "
      << lit_gap << '\n';
    const double info_gap = survival_gap(e50.empirical_survival, 0.5);
    d << "info, m=50 against 2.0 and Geom(0.5): rel err " << std::abs(e50.escape.mean - 2.0) / 2.0 << ", gap "
      << info_gap << " (model offset at k=1 is 0.01)\n";
    return f50 && f51;
  });

  // Criteria 5 and 6 share their campaigns.
  struct Named {
    std::string id;
    Graph g;
  };
  std::vector<Named> even{{"K5", gen_complete(5)},
                          {"Q4", gen_hypercube(4)},
                          {"T5x5", gen_torus({5, 5})},
                          {"C4xK3", gen_product_k3(gen_cycle(4))}};
  std::vector<Named> odd{{"K4", gen_complete(4)},
                         {"K6", gen_complete(6)},
                         {"Q3", gen_hypercube(3)},
                         {"RR50_3", gen_random_regular(50, 3, 7, true)},
                         {"P6", gen_path(6)},
                         {"diamond", named("diamond")}};
  std::vector<CoverCampaign> camps;
  for (const auto& x : even) camps.push_back(cover_campaign("acc5", x.id, x.g, Rule::uniform_random(), 2000, 105));
  for (const auto& x : odd) camps.push_back(cover_campaign("acc5", x.id, x.g, Rule::uniform_random(), 2000, 105));

  criterion(5, "even-degree part structure and greedy total", [&](std::ostream& d) {
    bool ok = true;
    for (std::size_t i = 0; i < camps.size(); ++i) {
      const auto& c = camps[i];
      const bool is_even = i < even.size();
      bool pass = c.greedy_total_failures() == 0 && c.overhead.truncated == 0;
      if (is_even) pass = pass && c.parts_checked() > 0 && c.closure_failures() == 0 && c.short_part_failures() == 0;
      ok = ok && pass;
      d << c.graph_id << (is_even ? " (even)" : " (odd) ") << ": greedy-total failures " << c.greedy_total_failures();
      if (is_even) {
        d << ", parts " << c.parts_checked() << ", not closed " << c.closure_failures() << ", shorter than girth "
          << c.short_part_failures();
      }
      d << '\n';
    }
    return ok;
  });

  criterion(6, "bad-set chain and overhead identity", [&](std::ostream& d) {
    bool ok = true;
    std::size_t trials = 0;
    for (const auto& c : camps) {
      ok = ok && c.chain_failures() == 0 && c.identity_failures() == 0;
      trials += c.trials.size();
      d << c.graph_id << ": chain failures " << c.chain_failures() << ", identity failures " << c.identity_failures()
        << '\n';
    }
    d << trials << " trials on " << camps.size() << " graphs\n";
    return ok;
  });

  criterion(7, "hypercube Q10: GRW overhead vs SRW vertex cover", [](std::ostream& d) {
    auto h = hypercube_coupling_check(10, 1000, 107);
    d << "mean overhead " << h.grw.overhead.mean << ", SRW vertex cover " << h.srw_vertex_cover.mean
      << ", pooled se " << h.pooled_se << ", |E| " << h.grw.edges << '\n';
    return h.coupling_pass && h.linear_pass;
  });

  criterion(8, "trees: overhead window and edge hitting times", [](std::ostream& d) {
    auto t = tree_bound_check(gen_regular_tree(3, 6), 10000, 108);
    d << "3-regular depth 6: mean overhead " << t.campaign.overhead.mean << " window [" << (1 - t.delta) * t.lower
      << ", " << (1 + t.delta) * t.upper << "]\n";
    std::vector<RootedTree> trees{gen_tree({2, 2}), gen_tree({2, 2, 2}), gen_regular_tree(3, 2), gen_tree({3, 2}),
                                  gen_tree({2, 1, 1, 1}), RootedTree(gen_path(20), 0), RootedTree(gen_star(19), 0)};
    for (std::size_t n = 2; n <= 20; ++n) {
      for (std::uint64_t s = 0; s < 20; ++s) trees.push_back(gen_random_tree(n, 1000 + s));
    }
    std::size_t edges = 0;
    double worst = 0.0;
    for (const RootedTree& tr : trees) {
      const Graph& g = tr.graph();
      if (g.vertex_count() > 20) continue;
      for (Vertex u = 0; u < g.vertex_count(); ++u) {
        if (u == tr.root()) continue;
        const double expect = 2.0 * static_cast<double>(tr.subtree_edges(u)) + 1.0;
        worst = std::max(worst, std::abs(exact_hitting_time(g, u, tr.parent(u)) - expect));
        ++edges;
      }
    }
    d << edges << " tree edges, max |h(u, parent) - (2|T_u|+1)| = " << worst << '\n';
    return t.pass && worst <= 1e-8;
  });

  criterion(9, "adversarial product graph", [](std::ostream& d) {
    bool ok = true;
    for (std::size_t m : {50, 100, 200}) {
      Graph h = gen_random_regular(m, 4, 109, true);
      auto a = adversarial_lower_bound_check("RR" + std::to_string(m), h, 1000, 109 + m);
      const bool pass = a.residue_failures == 0 && a.first_part_failures == 0 &&
                        a.adversarial.overhead.mean > a.random.overhead.mean && a.ratio >= kAdversarialRatioFloor;
      ok = ok && pass;
      d << "n=" << a.n << ": residue failures " << a.residue_failures << ", adversarial " << a.adversarial.overhead.mean
        << " vs rand " << a.random.overhead.mean << ", ratio " << a.ratio << " (floor " << kAdversarialRatioFloor
        << ")\n";
    }
    return ok;
  });

  criterion(10, "range ratio on torus 20x20", [](std::ostream& d) {
    auto rows = range_ratio_campaign(gen_torus({20, 20}), {10, 100, 1000}, 10000, 110);
    bool ok = true;
    for (const auto& r : rows) {
      ok = ok && r.pass;
      d << "t=" << r.t << ": N_grw " << r.grw.mean << " N_srw " << r.srw.mean << " ratio " << r.ratio << " +- "
        << r.ratio_ci_half_width << '\n';
    }
    return ok;
  });

  criterion(11, "transience on Z^d", [](std::ostream& d) {
    auto z1 = transience_campaign({.dimension = 1}, WalkKind::Greedy, Rule::uniform_random(), 10000, 200, 111, 10);
    bool ok = z1.returns.mean == 0.0 && z1.tail_fraction(0) == 0.0 && z1.audit_failures() == 0;
    d << "Z^1: max returns " << (z1.tail_fraction(0) > 0 ? ">0" : "0") << " over " << z1.trials.size() << " trials\n";
    const LatticeSpec variants[] = {{.dimension = 3}, {.dimension = 3, .epsilon = 0.5, .deletion_seed = 11}};
    for (const LatticeSpec& spec : variants) {
      auto z3 = transience_campaign(spec, WalkKind::Greedy, Rule::uniform_random(), 1000000, 1000, 112, 10);
      const bool pass = z3.returns.truncated == 0 && z3.tail_fraction(20) < 0.01 && z3.audited() == 10 &&
                        z3.audit_failures() == 0 && (spec.epsilon || z3.closure_violations() == 0);
      ok = ok && pass;
      d << "Z^3" << (spec.epsilon ? " eps=0.5" : "") << ": mean returns " << z3.returns.mean << ", fraction > 20 "
        << z3.tail_fraction(20) << ", audited " << z3.audited() << " failed " << z3.audit_failures()
        << ", closure violations " << z3.closure_violations() << '\n';
    }
    return ok;
  });

  criterion(12, "mirror coupling on Z^2", [](std::ostream& d) {
    auto r = return_probability_campaign(10000, 100000, 112);
    d << "divergences " << r.divergences << ", indicator mismatches " << r.indicator_mismatches
      << ", returned " << r.returned.mean << ", undecided " << r.undecided_fraction << '\n';
    return r.divergences == 0 && r.indicator_mismatches == 0 && r.runs.size() == 10000;
  });

  criterion(13, "reproducibility from config echo", [](std::ostream& d) {
    const fs::path root = fs::path(GRW_ACCEPTANCE_WORK_DIR) / "repro";
    fs::remove_all(root);
    fs::create_directories(root);
    struct Campaign {
      std::string name;
      std::string args;
      std::vector<std::string> files;
    };
    const std::vector<Campaign> campaigns{
        {"cover", "cover --family complete --sizes 16,32 --trials 300 --seed 7", {"trials.csv", "summary.csv"}},
        {"cover_rr", "cover --family random_regular --sizes 60 --degree 4 --trials 200 --seed 8",
         {"trials.csv", "summary.csv"}},
        {"escape", "escape --n 21 --m 7 --trials 20000 --seed 9", {"escape.csv", "survival.csv"}},
        {"tree", "tree --degree 3 --depth 3 --trials 500 --seed 10", {"tree.csv", "trials.csv"}},
        {"transience", "transience --dim 2 --horizon 5000 --trials 40 --seed 11",
         {"transience.csv", "transience_summary.csv"}},
        {"range", "range --family torus --n 8 --t 5,50 --trials 500 --seed 12", {"range.csv"}},
        {"mirror", "mirror --trials 300 --horizon 5000 --seed 13", {"mirror.csv", "mirror_summary.csv"}},
    };
    bool ok = true;
    for (const Campaign& c : campaigns) {
      const fs::path first = root / (c.name + "_w1"), second = root / (c.name + "_w3"),
                     third = root / (c.name + "_w2");
      const std::string sub = c.args.substr(0, c.args.find(' '));
      bool pass = run_cli(c.args + " --workers 1 --out " + first.string());
      pass = pass && run_cli(sub + " --config " + (first / "config.txt").string() + " --workers 3 --out " + second.string());
      // The config echo alone, worker count included, also reproduces.
      pass = pass && run_cli(sub + " --config " + (second / "config.txt").string() + " --workers 2 --out " + third.string());
      for (const auto& f : c.files) {
        const std::string a = slurp(first / f);
        pass = pass && !a.empty() && a == slurp(second / f) && a == slurp(third / f);
      }
      ok = ok && pass;
      d << c.name << ": " << (pass ? "identical" : "DIFFERENT") << " across workers 1, 3, 2\n";
    }
    return ok;
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
