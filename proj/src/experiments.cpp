#include "grw/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "grw/adversarial.hpp"
#include "grw/error.hpp"
#include "grw/generators.hpp"
#include "grw/oracle.hpp"
#include "grw/parallel.hpp"

namespace grw {

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t x = seed ^ (tag * 0x9e3779b97f4a7c15ULL);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double n_ln_n(std::size_t n) {
  const double x = static_cast<double>(n);
  return x * std::log(x);
}

// Structural checks of one finished run. even_girth is set only on graphs with
// all degrees even, where greedy parts must close with length >= girth.
CoverTrial analyze(const Graph& g, const CoverResult& r, std::optional<int> even_girth) {
  CoverTrial t;
  t.cover_time = r.cover_time;
  t.overhead = r.overhead;
  t.truncated = r.truncated;
  const PartDecomposition& p = r.parts;
  t.k_parts = p.k();
  if (r.truncated) return t;
  t.greedy_total = p.total_greedy();
  t.simple_total = p.total_simple();
  for (std::size_t i = 0; i < p.bad_size.size(); ++i) {
    if (i > 0 && p.bad_size[i] <= p.bad_size[i - 1]) t.chain_ok = false;
    const bool last = i + 1 == p.bad_size.size();
    if (last != (p.bad_size[i] == g.vertex_count())) t.chain_ok = false;
  }
  std::vector<Vertex> stuck = p.stuck_vertex;
  std::sort(stuck.begin(), stuck.end());
  t.distinct_stuck_ok = std::adjacent_find(stuck.begin(), stuck.end()) == stuck.end();
  if (even_girth) {
    for (std::size_t i = 0; i < p.stuck.size(); ++i) {
      ++t.parts;
      if (p.greedy_start_vertex[i] != p.stuck_vertex[i]) ++t.closure_failures;
      if (p.greedy_length(i) < static_cast<std::uint64_t>(*even_girth)) ++t.short_part_failures;
    }
  }
  return t;
}

std::optional<int> even_girth(const Graph& g) {
  if (!g.all_degrees_even()) return std::nullopt;
  return girth(g).value_or(0);
}

CoverCampaign finish(std::string campaign, std::string graph_id, const Graph& g, WalkKind kind, std::string rule,
                     std::uint64_t seed, std::vector<CoverTrial> trials) {
  CoverCampaign c;
  c.campaign = std::move(campaign);
  c.graph_id = std::move(graph_id);
  c.n = g.vertex_count();
  c.edges = g.edge_count();
  c.kind = kind;
  c.rule = std::move(rule);
  c.seed = seed;
  std::vector<double> cover, overhead;
  std::vector<char> truncated;
  for (const CoverTrial& t : trials) {
    cover.push_back(static_cast<double>(t.cover_time));
    overhead.push_back(static_cast<double>(t.overhead));
    truncated.push_back(t.truncated ? 1 : 0);
  }
  c.cover = summarize(cover, truncated, seed);
  c.overhead = summarize(overhead, truncated, seed);
  c.trials = std::move(trials);
  return c;
}

template <class Pred>
std::size_t count_trials(const std::vector<CoverTrial>& trials, Pred pred) {
  return static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), pred));
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

// ------------------------------------------------------------ cover campaigns

std::size_t CoverCampaign::identity_failures() const {
  return count_trials(trials, [](const CoverTrial& t) { return !t.truncated && t.simple_total != t.overhead; });
}
std::size_t CoverCampaign::greedy_total_failures() const {
  return count_trials(trials, [this](const CoverTrial& t) { return !t.truncated && t.greedy_total != edges; });
}
std::size_t CoverCampaign::chain_failures() const {
  return count_trials(trials, [](const CoverTrial& t) { return !t.chain_ok || !t.distinct_stuck_ok; });
}
std::size_t CoverCampaign::closure_failures() const {
  std::size_t s = 0;
  for (const auto& t : trials) s += t.closure_failures;
  return s;
}
std::size_t CoverCampaign::short_part_failures() const {
  std::size_t s = 0;
  for (const auto& t : trials) s += t.short_part_failures;
  return s;
}
std::uint64_t CoverCampaign::parts_checked() const {
  std::uint64_t s = 0;
  for (const auto& t : trials) s += t.parts;
  return s;
}

CoverCampaign cover_campaign(const std::string& campaign, const std::string& graph_id, const Graph& g,
                             const Rule& rule, std::size_t trials, std::uint64_t seed,
                             const CoverCampaignOptions& options) {
  require(trials >= 1, ErrorCode::InvalidParameter, "trials must be >= 1");
  const auto gi = options.kind == WalkKind::Greedy ? even_girth(g) : std::nullopt;
  RunOptions run;
  run.kind = options.kind;
  run.cap = options.cap;
  auto results = run_trials(
      trials, options.workers, [&] { return WalkState(g, options.start); },
      [&](std::size_t i, WalkState& state) {
        Rng rng = make_rng(seed, i);
        return analyze(g, run_until_edge_cover(state, rule, options.start, rng, run), gi);
      });
  return finish(campaign, graph_id, g, options.kind, rule.name(), seed, std::move(results));
}

void write_trial_rows(std::ostream& out, const CoverCampaign& c) {
  for (std::size_t i = 0; i < c.trials.size(); ++i) {
    const CoverTrial& t = c.trials[i];
    out << c.campaign << ',' << c.graph_id << ',' << c.n << ',' << c.edges << ',' << to_string(c.kind) << ','
        << c.rule << ',' << c.seed << ',' << i << ',' << t.cover_time << ',' << t.overhead << ',' << t.k_parts << ','
        << (t.truncated ? 1 : 0) << '\n';
  }
}

void write_summary_row(std::ostream& out, const CoverCampaign& c) {
  const double norm = c.n >= 2 ? c.overhead.mean / n_ln_n(c.n) : 0.0;
  out << c.campaign << ',' << c.graph_id << ',' << c.n << ',' << c.edges << ',' << to_string(c.kind) << ','
      << c.rule << ',' << c.seed << ',' << c.overhead.trials << ',' << c.overhead.truncated << ','
      << format_double(c.cover.mean) << ',' << format_double(c.overhead.mean) << ','
      << format_double(c.overhead.variance) << ',' << format_double(c.overhead.ci_half_width) << ','
      << format_double(norm) << '\n';
}

// ------------------------------------------------------------ families

Family parse_family(const std::string& name) {
  if (name == "complete") return Family::Complete;
  if (name == "hypercube") return Family::Hypercube;
  if (name == "hamming_le") return Family::HammingLe;
  if (name == "random_regular") return Family::RandomRegular;
  if (name == "product_k3") return Family::ProductK3;
  if (name == "torus") return Family::Torus;
  if (name == "tree") return Family::Tree;
  throw Error(ErrorCode::InvalidParameter, "unknown family '" + name + "'");
}

const char* to_string(Family f) {
  switch (f) {
    case Family::Complete: return "complete";
    case Family::Hypercube: return "hypercube";
    case Family::HammingLe: return "hamming_le";
    case Family::RandomRegular: return "random_regular";
    case Family::ProductK3: return "product_k3";
    case Family::Torus: return "torus";
    case Family::Tree: return "tree";
  }
  return "?";
}

FamilyMember make_family_member(Family family, std::int64_t size, const FamilyParams& p) {
  require(size >= 1, ErrorCode::InvalidParameter, "family size must be positive");
  const auto s = static_cast<std::size_t>(size);
  const std::string tag = std::to_string(size);
  switch (family) {
    case Family::Complete:
      return {"K" + tag, gen_complete(s)};
    case Family::Hypercube:
      return {"Q" + tag, gen_hypercube(static_cast<int>(size))};
    case Family::HammingLe:
      return {"H" + tag + "_" + std::to_string(p.ell), gen_hamming_le(static_cast<int>(size), p.ell)};
    case Family::RandomRegular:
      return {"RR" + tag + "_" + std::to_string(p.degree) + "_s" + std::to_string(p.graph_seed),
              gen_random_regular(s, static_cast<std::size_t>(p.degree), p.graph_seed, true)};
    case Family::ProductK3: {
      Graph h = gen_random_regular(s, static_cast<std::size_t>(p.degree), p.graph_seed, true);
      return {"RR" + tag + "_" + std::to_string(p.degree) + "_s" + std::to_string(p.graph_seed) + "xK3",
              gen_product_k3(h)};
    }
    case Family::Torus: {
      require(p.torus_dimension >= 1, ErrorCode::InvalidParameter, "torus dimension must be >= 1");
      std::vector<int> sides(static_cast<std::size_t>(p.torus_dimension), static_cast<int>(size));
      std::string id = "T";
      for (int i = 0; i < p.torus_dimension; ++i) id += (i ? "x" : "") + tag;
      return {id, gen_torus(sides)};
    }
    case Family::Tree:
      return {"Tree" + std::to_string(p.degree) + "_" + tag, gen_regular_tree(p.degree, static_cast<int>(size)).graph()};
  }
  throw Error(ErrorCode::InvalidParameter, "unknown family");
}

ScalingFit overhead_campaign(Family family, const std::vector<std::int64_t>& sizes, const FamilyParams& params,
                             const Rule& rule, std::size_t trials, std::uint64_t seed, int workers) {
  require(!sizes.empty(), ErrorCode::InvalidParameter, "no sizes given");
  ScalingFit fit;
  for (std::int64_t size : sizes) {
    FamilyMember m = make_family_member(family, size, params);
    CoverCampaignOptions opts;
    opts.workers = workers;
    fit.campaigns.push_back(cover_campaign("overhead", m.id, m.graph, rule, trials, seed, opts));
    const CoverCampaign& c = fit.campaigns.back();
    fit.n.push_back(c.n);
    fit.mean_overhead.push_back(c.overhead.mean);
    fit.ratio.push_back(c.n >= 2 ? c.overhead.mean / n_ln_n(c.n) : 0.0);
  }
  const bool positive = std::all_of(fit.mean_overhead.begin(), fit.mean_overhead.end(), [](double v) { return v > 0; }) &&
                        std::all_of(fit.n.begin(), fit.n.end(), [](std::size_t n) { return n >= 2; });
  if (positive && fit.n.size() >= 2) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < fit.n.size(); ++i) {
      x.push_back(std::log(n_ln_n(fit.n[i])));
      y.push_back(std::log(fit.mean_overhead[i]));
    }
    const double k = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i];
    const double mx = sx / k, my = sy / k;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
    if (sxx > 0) {
      fit.slope = sxy / sxx;
      fit.intercept = my - *fit.slope * mx;
      for (std::size_t i = 0; i < x.size(); ++i) fit.residuals.push_back(y[i] - (*fit.intercept + *fit.slope * x[i]));
    }
  }
  return fit;
}

// ------------------------------------------------------------ escape geometry

std::vector<double> empirical_survival(const std::vector<double>& samples, int max_k) {
  std::vector<double> s(static_cast<std::size_t>(max_k), 0.0);
  for (double v : samples) {
    for (int k = 1; k <= max_k && v > k; ++k) s[static_cast<std::size_t>(k - 1)] += 1.0;
  }
  for (double& x : s) x /= static_cast<double>(samples.size());
  return s;
}

double survival_gap(const std::vector<double>& empirical, double p) {
  double gap = 0.0;
  for (std::size_t i = 0; i < empirical.size(); ++i) {
    gap = std::max(gap, std::abs(empirical[i] - std::pow(1.0 - p, static_cast<double>(i + 1))));
  }
  return gap;
}

EscapeCheck escape_geometry_check(std::size_t n, std::size_t m, std::size_t trials, std::uint64_t seed,
                                  int workers) {
  require(m >= 1 && m < n, ErrorCode::InvalidParameter, "bad set size must satisfy 1 <= m < n");
  require(trials >= 1, ErrorCode::InvalidParameter, "trials must be >= 1");
  const Graph g = gen_complete(n);
  std::vector<char> bad(n, 0);
  std::fill(bad.begin(), bad.begin() + static_cast<std::ptrdiff_t>(m), 1);
  auto samples = run_trials(trials, workers, make_no_scratch, [&](std::size_t i, NoScratch&) {
    Rng rng = make_rng(seed, i);
    return static_cast<double>(escape_time(g, bad, 0, rng));
  });
  EscapeCheck c;
  c.n = n;
  c.bad_size = m;
  c.success_probability = double(n - m) / double(n - 1);
  c.formula_mean = double(n - 1) / double(n - m);
  c.exact_mean = exact_escape_expectation(g, bad, 0);
  c.empirical_survival = empirical_survival(samples, 10);
  for (int k = 1; k <= 10; ++k) c.geometric_survival.push_back(std::pow(1.0 - c.success_probability, k));
  c.max_survival_gap = survival_gap(c.empirical_survival, c.success_probability);
  c.escape = summarize(samples, seed);
  c.mean_relative_error = std::abs(c.escape.mean - c.formula_mean) / c.formula_mean;
  return c;
}

// ------------------------------------------------------------ trees

TreeCheck tree_bound_check(const RootedTree& tree, std::size_t trials, std::uint64_t seed, int workers) {
  const Graph& g = tree.graph();
  TreeCheck c;
  c.root_degree = g.degree(tree.root());
  require(c.root_degree >= 2, ErrorCode::InvalidParameter, "tree bound needs root degree >= 2");
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    if (u == tree.root()) continue;
    c.subtree_sum += tree.subtree_edges(u);
    c.upper += 2.0 * static_cast<double>(tree.subtree_edges(u)) + 1.0;
  }
  c.lower = (1.0 - 1.0 / static_cast<double>(c.root_degree)) * 2.0 * static_cast<double>(c.subtree_sum);
  CoverCampaignOptions opts;
  opts.start = tree.root();
  opts.workers = workers;
  c.campaign = cover_campaign("tree", "tree_n" + std::to_string(g.vertex_count()), g, Rule::uniform_random(), trials,
                              seed, opts);
  const double mean = c.campaign.overhead.mean;
  c.pass = mean >= (1.0 - c.delta) * c.lower && mean <= (1.0 + c.delta) * c.upper;
  return c;
}

// ------------------------------------------------------------ hypercube

HypercubeCheck hypercube_coupling_check(int d, std::size_t trials, std::uint64_t seed, int workers) {
  require(d >= 2 && d % 2 == 0, ErrorCode::InvalidParameter, "hypercube coupling needs an even dimension");
  HypercubeCheck c;
  c.d = d;
  const Graph g = gen_hypercube(d);
  CoverCampaignOptions opts;
  opts.workers = workers;
  c.grw = cover_campaign("hypercube", "Q" + std::to_string(d), g, Rule::uniform_random(), trials, seed, opts);
  const std::uint64_t srw_seed = derive_seed(seed, 1);
  auto vc = run_trials(
      trials, workers, [&] { return WalkState(g, 0); },
      [&](std::size_t i, WalkState& state) {
        Rng rng = make_rng(srw_seed, i);
        RunOptions run;
        run.kind = WalkKind::Simple;
        return static_cast<double>(run_until_vertex_cover(state, Rule::uniform_random(), 0, rng, run).cover_time);
      });
  c.srw_vertex_cover = summarize(vc, srw_seed);
  const double se1 = c.grw.overhead.standard_error(), se2 = c.srw_vertex_cover.standard_error();
  c.pooled_se = std::sqrt(se1 * se1 + se2 * se2);
  c.coupling_pass = c.grw.overhead.mean <= c.srw_vertex_cover.mean + 3.0 * c.pooled_se;
  c.linear_pass = c.grw.overhead.mean <= static_cast<double>(g.edge_count());
  return c;
}

// ------------------------------------------------------------ girth bound

GirthCheck girth_bound_check(const std::string& graph_id, const Graph& h, const Rule& rule, std::size_t trials,
                             std::uint64_t seed, int workers) {
  require(h.is_regular() && h.all_degrees_even() && h.is_connected() && h.edge_count() > 0,
          ErrorCode::InvalidParameter, "girth bound needs a connected regular graph of even degree");
  GirthCheck c;
  c.girth = girth(h).value();
  c.spectral = spectral_radius(h);
  CoverCampaignOptions opts;
  opts.workers = workers;
  c.campaign = cover_campaign("girth", graph_id, h, rule, trials, seed, opts);
  const double n = static_cast<double>(h.vertex_count());
  c.implied_constant = c.campaign.overhead.mean * (1.0 - c.spectral.lambda) * c.girth /
                       (static_cast<double>(h.edge_count()) * std::log(n));
  c.pass = c.implied_constant <= kGirthBoundConstant;
  return c;
}

// ------------------------------------------------------------ adversarial

AdversarialCheck adversarial_lower_bound_check(const std::string& graph_id, const Graph& h, std::size_t trials,
                                               std::uint64_t seed, int workers) {
  const Graph g = gen_product_k3(h);
  const Vertex u0 = 0;
  const Rule rule = adversarial_layer_rule(g, h, u0);
  const std::uint64_t first_len = adversarial_first_part_length(h);
  const auto gi = even_girth(g);

  struct Out {
    CoverTrial trial;
    bool residue_ok = false;
    bool first_ok = false;
  };
  auto results = run_trials(
      trials, workers, [&] { return WalkState(g, u0); },
      [&](std::size_t i, WalkState& state) {
        Rng rng = make_rng(seed, i);
        Out out;
        RunOptions run;
        run.on_stuck = [&](const WalkState& s, const PartDecomposition& p) {
          if (p.stuck.size() != 1) return;
          out.residue_ok = residue_is_nonstart_triangles(s, h, u0);
          out.first_ok = p.stuck.front() == first_len && p.stuck_vertex.front() == u0;
        };
        out.trial = analyze(g, run_until_edge_cover(state, rule, u0, rng, run), gi);
        return out;
      });

  AdversarialCheck c;
  c.n = g.vertex_count();
  std::vector<CoverTrial> trials_out;
  for (const Out& o : results) {
    trials_out.push_back(o.trial);
    c.residue_failures += o.residue_ok ? 0 : 1;
    c.first_part_failures += o.first_ok ? 0 : 1;
  }
  const std::string id = graph_id + "xK3";
  c.adversarial = finish("adversarial", id, g, WalkKind::Greedy, "adversarial", seed, std::move(trials_out));
  CoverCampaignOptions opts;
  opts.start = u0;
  opts.workers = workers;
  c.random = cover_campaign("adversarial", id, g, Rule::uniform_random(), trials, seed, opts);
  c.ratio = c.adversarial.overhead.mean / n_ln_n(c.n);
  return c;
}

// ------------------------------------------------------------ transience

double TransienceCampaign::tail_fraction(std::uint64_t threshold) const {
  if (trials.empty()) return 0.0;
  const auto over = std::count_if(trials.begin(), trials.end(),
                                  [threshold](const TransienceTrial& t) { return t.return_count > threshold; });
  return static_cast<double>(over) / static_cast<double>(trials.size());
}

std::size_t TransienceCampaign::audited() const {
  return static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const TransienceTrial& t) { return t.audit_valid.has_value(); }));
}

std::size_t TransienceCampaign::audit_failures() const {
  return static_cast<std::size_t>(std::count_if(
      trials.begin(), trials.end(), [](const TransienceTrial& t) { return t.audit_valid == false; }));
}

std::uint64_t TransienceCampaign::closure_violations() const {
  std::uint64_t s = 0;
  for (const auto& t : trials) s += t.closure_violations;
  return s;
}

TransienceCampaign transience_campaign(const LatticeSpec& spec, WalkKind kind, const Rule& rule,
                                       std::uint64_t horizon, std::size_t trials, std::uint64_t seed,
                                       std::size_t audit_trials, int workers) {
  require(trials >= 1, ErrorCode::InvalidParameter, "trials must be >= 1");
  TransienceCampaign c;
  c.spec = spec;
  c.kind = kind;
  c.rule = rule.name();
  c.horizon = horizon;
  c.seed = seed;
  c.trials = run_trials(trials, workers, make_no_scratch, [&](std::size_t i, NoScratch&) {
    Rng rng = make_rng(seed, i);
    LatticeOptions opts;
    opts.kind = kind;
    opts.horizon = horizon;
    opts.record_trajectory = i < audit_trials;
    LatticeResult r = run_lattice(spec, rule, rng, opts);
    TransienceTrial t;
    t.return_count = r.return_count;
    t.steps = r.steps;
    t.distinct_edges = r.distinct_edges;
    t.stuck_count = r.stuck_count;
    t.closure_violations = r.closure_violations + r.short_part_violations;
    t.truncated = r.truncated;
    if (r.trajectory) t.audit_valid = audit_lattice_trajectory(spec, *r.trajectory).valid;
    return t;
  });
  std::vector<double> returns;
  std::vector<char> truncated;
  for (const auto& t : c.trials) {
    returns.push_back(static_cast<double>(t.return_count));
    truncated.push_back(t.truncated ? 1 : 0);
  }
  c.returns = summarize(returns, truncated, seed);
  return c;
}

void write_transience_rows(std::ostream& out, const std::string& campaign, const TransienceCampaign& c) {
  const std::string eps = c.spec.epsilon ? format_double(*c.spec.epsilon) : "none";
  for (std::size_t i = 0; i < c.trials.size(); ++i) {
    const auto& t = c.trials[i];
    out << campaign << ',' << c.spec.dimension << ',' << eps << ',' << to_string(c.kind) << ',' << c.rule << ','
        << c.seed << ',' << i << ',' << c.horizon << ',' << t.steps << ',' << t.return_count << ','
        << t.distinct_edges << ',' << t.stuck_count << ',' << (t.truncated ? 1 : 0) << '\n';
  }
}

// ------------------------------------------------------------ range

std::vector<RangeRow> range_ratio_campaign(const Graph& g, const std::vector<std::uint64_t>& t_values,
                                           std::size_t trials, std::uint64_t seed, int workers) {
  require(g.all_degrees_even() && g.is_regular(), ErrorCode::InvalidParameter,
          "range ratio needs an even-degree regular graph");
  auto grw = range_growth(g, WalkKind::Greedy, Rule::uniform_random(), t_values, trials, seed, workers);
  auto srw = range_growth(g, WalkKind::Simple, Rule::uniform_random(), t_values, trials, derive_seed(seed, 2),
                          workers);
  std::vector<RangeRow> rows;
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    RangeRow r;
    r.t = t_values[i];
    r.grw = grw[i];
    r.srw = srw[i];
    if (r.srw.mean > 0) {
      r.ratio = r.grw.mean / r.srw.mean;
      const double ra = r.grw.mean > 0 ? r.grw.standard_error() / r.grw.mean : 0.0;
      const double rb = r.srw.standard_error() / r.srw.mean;
      r.ratio_ci_half_width = kZ95 * r.ratio * std::sqrt(ra * ra + rb * rb);
    }
    r.pass = r.t == 0 || r.ratio >= 0.5 - r.ratio_ci_half_width;
    rows.push_back(r);
  }
  return rows;
}

void write_range_rows(std::ostream& out, const std::string& campaign, const std::string& graph_id,
                      const std::vector<RangeRow>& rows) {
  for (const auto& r : rows) {
    out << campaign << ',' << graph_id << ',' << r.t << ',' << r.grw.trials << ',' << format_double(r.grw.mean) << ','
        << format_double(r.grw.ci_half_width) << ',' << format_double(r.srw.mean) << ','
        << format_double(r.srw.ci_half_width) << ',' << format_double(r.ratio) << ','
        << format_double(r.ratio_ci_half_width) << ',' << (r.pass ? 1 : 0) << '\n';
  }
}

}  // namespace grw
