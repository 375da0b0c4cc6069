#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "config.hpp"
#include "grw/error.hpp"
#include "grw/experiments.hpp"
#include "grw/generators.hpp"
#include "grw/graph_io.hpp"
#include "grw/mirror.hpp"
#include "grw/oracle.hpp"
#include "grw/walk.hpp"

namespace fs = std::filesystem;
using namespace grw;
using grw::cli::KeySpec;
using grw::cli::RunConfig;

namespace {

// ------------------------------------------------------------ key tables

std::vector<KeySpec> common_keys(bool seeded) {
  std::vector<KeySpec> k{{"workers", "0", "worker threads (0 = available parallelism)"},
                         {"out", "", "output directory; CSVs and config.txt are written there"}};
  if (seeded) k.insert(k.begin(), KeySpec{"seed", "", "master seed", true});
  return k;
}

std::vector<KeySpec> graph_keys(const std::string& family, const std::string& n) {
  return {{"graph", "", "edge-list file; overrides --family"},
          {"family", family, "complete|hypercube|hamming_le|random_regular|product_k3|torus|tree"},
          {"n", n, "family size parameter"},
          {"ell", "2", "hamming_le distance"},
          {"degree", "4", "random_regular / product_k3 base degree, tree branching"},
          {"dim", "2", "torus dimension"},
          {"graph-seed", "1", "seed of random graph families"}};
}

std::vector<KeySpec> join(std::vector<KeySpec> a, const std::vector<KeySpec>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct Command {
  std::string name;
  std::string help;
  std::vector<KeySpec> keys;
  std::function<void(const RunConfig&, std::ostream& log)> run;
};

// ------------------------------------------------------------ helpers

FamilyParams family_params(const RunConfig& c) {
  FamilyParams p;
  p.ell = static_cast<int>(c.integer("ell"));
  p.degree = static_cast<int>(c.integer("degree"));
  p.torus_dimension = static_cast<int>(c.integer("dim"));
  p.graph_seed = c.unsigned_integer("graph-seed");
  return p;
}

FamilyMember load_member(const RunConfig& c, std::int64_t size) {
  if (c.has("graph")) {
    const std::string path = c.str("graph");
    return {fs::path(path).stem().string(), load_graph_file(path)};
  }
  return make_family_member(parse_family(c.str("family")), size, family_params(c));
}

FamilyMember load_member(const RunConfig& c) {
  return load_member(c, c.has("graph") ? 0 : c.integer("n"));
}

std::uint64_t cap_of(const RunConfig& c) { return c.optional_unsigned("cap").value_or(kUnboundedCap); }

int workers_of(const RunConfig& c) { return static_cast<int>(c.integer("workers")); }

// Writes name into the output directory, or to stdout when there is none.
void emit(const RunConfig& c, const std::string& name, const std::string& text) {
  if (!c.has("out")) {
    std::cout << text;
    return;
  }
  std::ofstream f(fs::path(c.str("out")) / name, std::ios::binary);
  require(f.good(), ErrorCode::InvalidParameter, "cannot write " + name);
  f << text;
}

// ------------------------------------------------------------ subcommands

void cmd_gen(const RunConfig& c, std::ostream& log) {
  FamilyParams p = family_params(c);
  p.graph_seed = c.unsigned_integer("seed");
  FamilyMember m = make_family_member(parse_family(c.str("family")), c.integer("n"), p);
  emit(c, "graph.edges", save_graph(m.graph));
  log << "generated " << m.id << ": " << m.graph.vertex_count() << " vertices, " << m.graph.edge_count()
      << " edges\n";
}

void cmd_run(const RunConfig& c, std::ostream& log) {
  FamilyMember m = load_member(c);
  const WalkKind kind = parse_walk_kind(c.str("kind"));
  const Rule rule = parse_rule(c.str("rule"));
  const auto start = static_cast<Vertex>(c.unsigned_integer("start"));
  RunOptions opts;
  opts.kind = kind;
  opts.cap = cap_of(c);
  opts.record_trajectory = c.flag("trajectory");
  std::ostringstream out;
  out << "graph " << m.id << "\nn " << m.graph.vertex_count() << "\nedges " << m.graph.edge_count() << '\n';
  if (kind == WalkKind::VertexGreedy) {
    auto r = run_until_vertex_cover(m.graph, rule, start, c.unsigned_integer("seed"), opts);
    out << "vertex_cover_time " << r.cover_time << "\ntruncated " << r.truncated << '\n';
    if (r.trajectory) {
      std::ostringstream t;
      write_trajectory(t, *r.trajectory, m.graph);
      emit(c, "trajectory.txt", t.str());
    }
  } else {
    auto r = run_until_edge_cover(m.graph, rule, start, c.unsigned_integer("seed"), opts);
    const PartDecomposition& p = r.parts;
    out << "cover_time " << r.cover_time << "\noverhead " << r.overhead << "\ntruncated " << r.truncated
        << "\nk_parts " << p.k() << '\n';
    for (std::size_t i = 0; i < p.stuck.size(); ++i) {
      out << "part " << i + 1 << " greedy " << p.greedy_start[i] << ' ' << p.stuck[i] << " stuck_at "
          << p.stuck_vertex[i] << " bad_size " << p.bad_size[i] << " simple " << p.simple_length(i) << '\n';
    }
    if (r.trajectory) {
      std::ostringstream t;
      write_trajectory(t, *r.trajectory, m.graph);
      emit(c, "trajectory.txt", t.str());
    }
  }
  if (c.has("out")) emit(c, "run.txt", out.str());
  log << out.str();
}

void cmd_cover(const RunConfig& c, std::ostream& log) {
  const Rule rule = parse_rule(c.str("rule"));
  CoverCampaignOptions opts;
  opts.kind = parse_walk_kind(c.str("kind"));
  opts.start = static_cast<Vertex>(c.unsigned_integer("start"));
  opts.cap = cap_of(c);
  opts.workers = workers_of(c);
  std::vector<std::int64_t> sizes = c.has("graph") ? std::vector<std::int64_t>{0} : c.integers("sizes");
  std::ostringstream trials, summary;
  trials << kTrialCsvHeader << '\n';
  summary << kSummaryCsvHeader << '\n';
  for (std::int64_t size : sizes) {
    FamilyMember m = load_member(c, size);
    auto camp = cover_campaign(c.str("campaign"), m.id, m.graph, rule, c.unsigned_integer("trials"),
                               c.unsigned_integer("seed"), opts);
    write_trial_rows(trials, camp);
    write_summary_row(summary, camp);
  }
  if (c.has("out")) emit(c, "trials.csv", trials.str());
  emit(c, "summary.csv", summary.str());
  if (c.has("out")) log << summary.str();
}

void cmd_escape(const RunConfig& c, std::ostream& log) {
  auto e = escape_geometry_check(c.unsigned_integer("n"), c.unsigned_integer("m"), c.unsigned_integer("trials"),
                                 c.unsigned_integer("seed"), workers_of(c));
  std::ostringstream out, surv;
  out << "n,m,trials,mean,ci_half_width,formula_mean,exact_mean,success_probability,mean_relative_error,"
         "max_survival_gap\n"
      << e.n << ',' << e.bad_size << ',' << e.escape.trials << ',' << format_double(e.escape.mean) << ','
      << format_double(e.escape.ci_half_width) << ',' << format_double(e.formula_mean) << ','
      << format_double(e.exact_mean) << ',' << format_double(e.success_probability) << ','
      << format_double(e.mean_relative_error) << ',' << format_double(e.max_survival_gap) << '\n';
  surv << "k,empirical,geometric\n";
  for (std::size_t k = 0; k < e.empirical_survival.size(); ++k) {
    surv << k + 1 << ',' << format_double(e.empirical_survival[k]) << ','
         << format_double(e.geometric_survival[k]) << '\n';
  }
  emit(c, "escape.csv", out.str());
  emit(c, "survival.csv", surv.str());
  if (c.has("out")) log << out.str();
}

void cmd_tree(const RunConfig& c, std::ostream& log) {
  RootedTree tree = c.has("children")
                        ? gen_tree([&] {
                            std::vector<int> v;
                            for (auto x : c.integers("children")) v.push_back(static_cast<int>(x));
                            return v;
                          }())
                        : gen_regular_tree(static_cast<int>(c.integer("degree")),
                                           static_cast<int>(c.integer("depth")));
  auto t = tree_bound_check(tree, c.unsigned_integer("trials"), c.unsigned_integer("seed"), workers_of(c));
  std::ostringstream out, trials;
  out << "n,edges,root_degree,subtree_sum,lower,upper,delta,mean_overhead,ci_half_width,pass\n"
      << tree.graph().vertex_count() << ',' << tree.graph().edge_count() << ',' << t.root_degree << ','
      << t.subtree_sum << ',' << format_double(t.lower) << ',' << format_double(t.upper) << ','
      << format_double(t.delta) << ',' << format_double(t.campaign.overhead.mean) << ','
      << format_double(t.campaign.overhead.ci_half_width) << ',' << (t.pass ? "PASS" : "FAIL") << '\n';
  trials << kTrialCsvHeader << '\n';
  write_trial_rows(trials, t.campaign);
  emit(c, "tree.csv", out.str());
  if (c.has("out")) {
    emit(c, "trials.csv", trials.str());
    log << out.str();
  }
}

void cmd_transience(const RunConfig& c, std::ostream& log) {
  LatticeSpec spec;
  spec.dimension = static_cast<int>(c.integer("dim"));
  spec.epsilon = c.optional_real("epsilon");
  spec.deletion_seed = c.unsigned_integer("deletion-seed");
  auto t = transience_campaign(spec, parse_walk_kind(c.str("kind")), parse_rule(c.str("rule")),
                               c.unsigned_integer("horizon"), c.unsigned_integer("trials"),
                               c.unsigned_integer("seed"), c.unsigned_integer("audit"), workers_of(c));
  std::ostringstream rows, summary;
  rows << kTransienceCsvHeader << '\n';
  write_transience_rows(rows, c.str("campaign"), t);
  const std::uint64_t threshold = c.unsigned_integer("threshold");
  summary << "dimension,epsilon,trials,mean_returns,ci_half_width,threshold,tail_fraction,audited,audit_failures,"
             "closure_violations\n"
          << spec.dimension << ',' << (spec.epsilon ? format_double(*spec.epsilon) : "") << ','
          << t.trials.size() << ',' << format_double(t.returns.mean) << ','
          << format_double(t.returns.ci_half_width) << ',' << threshold << ','
          << format_double(t.tail_fraction(threshold)) << ',' << t.audited() << ',' << t.audit_failures() << ','
          << t.closure_violations() << '\n';
  if (c.has("out")) emit(c, "transience.csv", rows.str());
  emit(c, "transience_summary.csv", summary.str());
  if (c.has("out")) log << summary.str();
}

void cmd_range(const RunConfig& c, std::ostream& log) {
  FamilyMember m = load_member(c);
  std::vector<std::uint64_t> ts;
  for (auto t : c.integers("t")) {
    require(t >= 1, ErrorCode::InvalidParameter, "t values must be >= 1");
    ts.push_back(static_cast<std::uint64_t>(t));
  }
  auto rows = range_ratio_campaign(m.graph, ts, c.unsigned_integer("trials"), c.unsigned_integer("seed"),
                                   workers_of(c));
  std::ostringstream out;
  out << kRangeCsvHeader << '\n';
  write_range_rows(out, c.str("campaign"), m.id, rows);
  emit(c, "range.csv", out.str());
  if (c.has("out")) log << out.str();
}

void cmd_mirror(const RunConfig& c, std::ostream& log) {
  auto r = return_probability_campaign(c.unsigned_integer("trials"), c.unsigned_integer("horizon"),
                                       c.unsigned_integer("seed"), workers_of(c));
  std::ostringstream rows, summary;
  rows << kMirrorCsvHeader << '\n';
  write_mirror_rows(rows, r);
  summary << "trials,horizon,return_fraction,ci_half_width,undecided_fraction,divergences,indicator_mismatches\n"
          << r.runs.size() << ',' << r.horizon << ',' << format_double(r.returned.mean) << ','
          << format_double(r.returned.ci_half_width) << ',' << format_double(r.undecided_fraction) << ','
          << r.divergences << ',' << r.indicator_mismatches << '\n';
  if (c.has("out")) emit(c, "mirror.csv", rows.str());
  emit(c, "mirror_summary.csv", summary.str());
  if (c.has("out")) log << summary.str();
}

// "grw-rand" -> (Greedy, rand); "srw" -> (Simple, rand).
std::pair<WalkKind, Rule> oracle_kind(const std::string& text) {
  const auto dash = text.find('-');
  const WalkKind kind = parse_walk_kind(text.substr(0, dash));
  Rule rule = dash == std::string::npos ? Rule::uniform_random() : parse_rule(text.substr(dash + 1));
  return {kind, rule};
}

double oracle_value(const Graph& g, const std::string& cover, const std::string& kind_text, Vertex start,
                    OracleSolution* detail) {
  auto [kind, rule] = oracle_kind(kind_text);
  if (cover == "edge") {
    OracleSolution s = solve_edge_cover(g, kind, start, rule);
    if (detail) *detail = s;
    return s.expectation;
  }
  require(cover == "vertex", ErrorCode::InvalidParameter, "--cover must be edge or vertex");
  OracleSolution s = solve_vertex_cover(g, kind, start, rule);
  if (detail) *detail = s;
  return s.expectation;
}

void cmd_oracle(const RunConfig& c, std::ostream& log) {
  std::ostringstream out;
  out << std::setprecision(15);
  if (c.has("regression")) {
    const fs::path file = c.str("regression");
    std::ifstream in(file);
    require(in.good(), ErrorCode::ParseError, "cannot open " + file.string());
    const fs::path dir = c.has("graph-dir") ? fs::path(c.str("graph-dir")) : file.parent_path() / "graphs";
    std::size_t mismatches = 0;
    for (const RegressionEntry& e : read_regression(in)) {
      const Graph g = load_graph_file((dir / (e.graph_id + ".edges")).string());
      const double v = oracle_value(g, "edge", e.kind, e.start, nullptr);
      const bool ok = std::abs(v - e.expectation) <= kOracleTolerance * std::max(1.0, std::abs(e.expectation));
      if (!ok) ++mismatches;
      out << e.graph_id << ' ' << e.kind << ' ' << e.start << ' ' << e.expectation << ' ' << v << ' '
          << (ok ? "OK" : "MISMATCH") << '\n';
    }
    out << "verdict " << (mismatches == 0 ? "PASS" : "FAIL") << " mismatches " << mismatches << '\n';
  } else {
    FamilyMember m = load_member(c);
    OracleSolution s;
    const auto start = static_cast<Vertex>(c.unsigned_integer("start"));
    const double v = oracle_value(m.graph, c.str("cover"), c.str("kind"), start, &s);
    if (c.flag("regression-line")) {
      write_regression(out, {m.id, c.str("kind"), start, v});
    } else {
      out << v << '\n';
      std::cerr << "states " << s.states << " residual " << s.residual << '\n';
    }
  }
  emit(c, "oracle.txt", out.str());
  if (c.has("out")) log << out.str();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string x;
  while (std::getline(ss, x, ',')) f.push_back(x);
  if (!line.empty() && line.back() == ',') f.emplace_back();
  return f;
}

// Trial CSVs are collapsed to one row per campaign; other tables are aligned.
void report_file(const fs::path& path, std::ostream& out) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::ParseError, "cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) rows.push_back(split_csv(line));
  }
  if (rows.empty()) return;
  out << "== " << path.filename().string() << '\n';
  if (rows[0] == split_csv(kTrialCsvHeader)) {
    struct Acc {
      std::size_t trials = 0, truncated = 0;
      double cover = 0, overhead = 0;
    };
    std::map<std::string, Acc> groups;
    std::vector<std::string> order;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& r = rows[i];
      require(r.size() == 12, ErrorCode::ParseError, path.string() + ": bad trial row");
      std::string key = r[0] + ',' + r[1] + ',' + r[2] + ',' + r[3] + ',' + r[4] + ',' + r[5] + ',' + r[6];
      if (!groups.count(key)) order.push_back(key);
      Acc& a = groups[key];
      if (r[11] == "1") {
        ++a.truncated;
        continue;
      }
      ++a.trials;
      a.cover += std::stod(r[8]);
      a.overhead += std::stod(r[9]);
    }
    std::vector<std::vector<std::string>> table{
        {"campaign", "graph", "n", "edges", "kind", "rule", "seed", "trials", "truncated", "mean_cover",
         "mean_overhead"}};
    for (const auto& key : order) {
      const Acc& a = groups[key];
      auto r = split_csv(key);
      r.push_back(std::to_string(a.trials));
      r.push_back(std::to_string(a.truncated));
      r.push_back(format_double(a.trials ? a.cover / static_cast<double>(a.trials) : 0.0));
      r.push_back(format_double(a.trials ? a.overhead / static_cast<double>(a.trials) : 0.0));
      table.push_back(r);
    }
    rows = std::move(table);
  }
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], r[j].size());
  }
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j + 1 < r.size()) {
        out << std::left << std::setw(static_cast<int>(width[j]) + 2) << r[j];
      } else {
        out << r[j];
      }
    }
    out << '\n';
  }
  out << '\n';
}

void cmd_report(const RunConfig& c, std::ostream& log) {
  std::vector<fs::path> files;
  std::stringstream list(c.str("inputs"));
  std::string item;
  while (std::getline(list, item, ',')) {
    const fs::path p(item);
    require(fs::exists(p), ErrorCode::InvalidParameter, "no such input " + item);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.path().extension() == ".csv") found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  std::ostringstream out;
  for (const auto& f : files) report_file(f, out);
  emit(c, "report.txt", out.str());
  if (c.has("out")) log << out.str();
}

std::vector<Command> commands() {
  const auto walk = std::vector<KeySpec>{{"kind", "grw", "grw|srw|vgrw"},
                                         {"rule", "rand", "rand|least"},
                                         {"start", "0", "start vertex"}};
  std::vector<Command> cmds;
  cmds.push_back({"gen", "emit an edge-list file", join(join(graph_keys("complete", ""), {}), common_keys(true)),
                  cmd_gen});
  // gen takes its graph seed from --seed.
  std::erase_if(cmds.back().keys, [](const KeySpec& k) { return k.name == "graph" || k.name == "graph-seed"; });
  cmds.push_back({"run", "single trajectory with its part decomposition",
                  join(join(join(graph_keys("complete", ""), walk),
                            {{"cap", "", "step cap"}, {"trajectory", "false", "write trajectory.txt"}}),
                       common_keys(true)),
                  cmd_run});
  cmds.push_back({"cover", "edge cover campaign over family sizes",
                  join(join(join(graph_keys("complete", ""), walk),
                            {{"sizes", "", "comma-separated family sizes"},
                             {"trials", "1000", "trials per size"},
                             {"cap", "", "step cap per trial"},
                             {"campaign", "cover", "campaign label in the CSVs"}}),
                       common_keys(true)),
                  cmd_cover});
  cmds.push_back({"escape", "SRW escape from a bad set of K_n",
                  join({{"n", "101", "clique size"}, {"m", "50", "bad set size"}, {"trials", "100000", "trials"}},
                       common_keys(true)),
                  cmd_escape});
  cmds.push_back({"tree", "tree overhead bounds",
                  join({{"degree", "3", "regular tree degree"},
                        {"depth", "6", "regular tree depth"},
                        {"children", "", "children per level; overrides degree and depth"},
                        {"trials", "10000", "trials"}},
                       common_keys(true)),
                  cmd_tree});
  cmds.push_back({"transience", "origin returns on Z^d",
                  join({{"dim", "3", "lattice dimension"},
                        {"epsilon", "", "edge deletion exponent in (0,1]"},
                        {"deletion-seed", "1", "seed of the deleted edge set"},
                        {"kind", "grw", "grw|srw"},
                        {"rule", "rand", "rand|least"},
                        {"horizon", "1000000", "steps per trial"},
                        {"trials", "1000", "trials"},
                        {"audit", "0", "trials whose trajectory is replayed and audited"},
                        {"threshold", "20", "return count threshold for the tail fraction"},
                        {"campaign", "transience", "campaign label in the CSVs"}},
                       common_keys(true)),
                  cmd_transience});
  cmds.push_back({"range", "distinct vertices of GRW against SRW",
                  join(join(graph_keys("torus", "20"),
                            {{"t", "10,100,1000", "comma-separated times"},
                             {"trials", "10000", "trials"},
                             {"campaign", "range", "campaign label in the CSVs"}}),
                       common_keys(true)),
                  cmd_range});
  cmds.push_back({"mirror", "coupled GRW and mirror particle on Z^2",
                  join({{"trials", "10000", "coupled runs"}, {"horizon", "100000", "steps per run"}},
                       common_keys(true)),
                  cmd_mirror});
  cmds.push_back({"oracle", "exact expectations on small graphs",
                  join(join(graph_keys("complete", ""),
                            {{"kind", "grw-rand", "grw-rand|grw-least|srw|vgrw"},
                             {"cover", "edge", "edge|vertex"},
                             {"start", "0", "start vertex"},
                             {"regression", "", "check every entry of a regression file"},
                             {"graph-dir", "", "edge lists named <id>.edges (default: graphs/ next to the file)"},
                             {"regression-line", "false", "print a regression file line"}}),
                       common_keys(false)),
                  cmd_oracle});
  cmds.push_back({"report", "aggregate CSVs into a summary table",
                  join({{"inputs", "", "comma-separated CSV files or directories", true}}, common_keys(false)),
                  cmd_report});
  return cmds;
}

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidParameter:
    case ErrorCode::ParseError:
    case ErrorCode::NotEulerian:
    case ErrorCode::StateSpaceExceeded:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy random walk laboratory"};
  app.require_subcommand(1);
  auto cmds = commands();
  std::vector<std::map<std::string, std::string>> flag_values(cmds.size());
  std::vector<std::string> config_paths(cmds.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    CLI::App* sub = app.add_subcommand(cmds[i].name, cmds[i].help);
    for (const KeySpec& k : cmds[i].keys) {
      std::string help = k.help;
      if (!k.default_value.empty()) help += " [" + k.default_value + "]";
      sub->add_option("--" + k.name, flag_values[i][k.name], help);
    }
    sub->add_option("--config", config_paths[i], "config file of key = value lines");
    subs.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  std::size_t i = 0;
  while (!subs[i]->parsed()) ++i;
  const Command& cmd = cmds[i];
  try {
    RunConfig config(cmd.name, cmd.keys);
    if (!config_paths[i].empty()) {
      std::ifstream in(config_paths[i]);
      require(in.good(), ErrorCode::InvalidParameter, "cannot open " + config_paths[i]);
      config.load(in, config_paths[i]);
    }
    for (const KeySpec& k : cmd.keys) {
      if (subs[i]->count("--" + k.name) > 0) config.set(k.name, flag_values[i][k.name]);
    }
    config.validate();
    require(config.integer("workers") >= 0, ErrorCode::InvalidParameter, "--workers must be >= 0");
    if (config.has("out")) {
      fs::create_directories(config.str("out"));
      std::ofstream echo(fs::path(config.str("out")) / "config.txt", std::ios::binary);
      require(echo.good(), ErrorCode::InvalidParameter, "cannot write config.txt");
      config.echo(echo);
    }
    cmd.run(config, std::cout);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (exit_code(e) == 1) std::cerr << subs[i]->help();
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
