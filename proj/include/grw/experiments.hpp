#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "grw/analysis.hpp"
#include "grw/graph.hpp"
#include "grw/lattice.hpp"
#include "grw/stats.hpp"
#include "grw/walk.hpp"

namespace grw {

// ------------------------------------------------------------ edge cover trials

/// Everything measured in one covering trial, including the per-trial
/// structural checks of the part decomposition.
struct CoverTrial {
  std::uint64_t cover_time = 0;
  std::uint64_t overhead = 0;
  std::size_t k_parts = 0;
  bool truncated = false;
  std::uint64_t greedy_total = 0;
  std::uint64_t simple_total = 0;
  bool chain_ok = true;          ///< |B_i| strictly increasing, < n before k, = n at k
  bool distinct_stuck_ok = true;
  std::uint64_t parts = 0;                ///< greedy parts inspected for closure
  std::uint64_t closure_failures = 0;     ///< even degree only
  std::uint64_t short_part_failures = 0;  ///< even degree only, length < girth
};

struct CoverCampaign {
  std::string campaign;
  std::string graph_id;
  std::size_t n = 0;
  std::size_t edges = 0;
  WalkKind kind = WalkKind::Greedy;
  std::string rule;
  std::uint64_t seed = 0;
  std::vector<CoverTrial> trials;
  ExperimentResult cover;
  ExperimentResult overhead;

  std::size_t identity_failures() const;  ///< overhead != sum of simple parts
  std::size_t greedy_total_failures() const;
  std::size_t chain_failures() const;
  std::size_t closure_failures() const;
  std::size_t short_part_failures() const;
  std::uint64_t parts_checked() const;
};

struct CoverCampaignOptions {
  WalkKind kind = WalkKind::Greedy;
  Vertex start = 0;
  std::uint64_t cap = kUnboundedCap;
  int workers = 0;
};

/// trials independent edge covers of g; trial i uses stream i of seed.
CoverCampaign cover_campaign(const std::string& campaign, const std::string& graph_id, const Graph& g,
                             const Rule& rule, std::size_t trials, std::uint64_t seed,
                             const CoverCampaignOptions& options = {});

inline constexpr const char* kTrialCsvHeader =
    "campaign,graph,n,edges,kind,rule,seed,trial,cover_time,overhead,k_parts,truncated";
inline constexpr const char* kSummaryCsvHeader =
    "campaign,graph,n,edges,kind,rule,seed,trials,truncated,mean_cover,mean_overhead,variance_overhead,"
    "ci_half_width_overhead,overhead_per_n_ln_n";

void write_trial_rows(std::ostream& out, const CoverCampaign& c);
void write_summary_row(std::ostream& out, const CoverCampaign& c);

// ------------------------------------------------------------ graph families

/// Parameters of a family member beyond its size. size means: n for
/// complete, random_regular and product_k3 (n = vertices of H), d for
/// hypercube and hamming_le, side length for torus, depth for tree.
struct FamilyParams {
  int ell = 2;             ///< hamming_le distance
  int degree = 4;          ///< random_regular and product_k3 base degree; tree branching degree
  int torus_dimension = 2;
  std::uint64_t graph_seed = 1;
};

enum class Family { Complete, Hypercube, HammingLe, RandomRegular, ProductK3, Torus, Tree };
Family parse_family(const std::string& name);
const char* to_string(Family f);

struct FamilyMember {
  std::string id;
  Graph graph;
};
FamilyMember make_family_member(Family family, std::int64_t size, const FamilyParams& params = {});

/// Per-size overhead campaigns plus scaling diagnostics.
struct ScalingFit {
  std::vector<std::size_t> n;  ///< vertex counts
  std::vector<CoverCampaign> campaigns;
  std::vector<double> mean_overhead;
  std::vector<double> ratio;  ///< mean overhead / (n ln n)
  /// Least-squares slope and intercept of log(overhead) on log(n ln n);
  /// absent when some mean overhead is 0.
  std::optional<double> slope;
  std::optional<double> intercept;
  std::vector<double> residuals;
};

ScalingFit overhead_campaign(Family family, const std::vector<std::int64_t>& sizes, const FamilyParams& params,
                             const Rule& rule, std::size_t trials, std::uint64_t seed, int workers = 0);

// ------------------------------------------------------------ escape geometry

struct EscapeCheck {
  std::size_t n = 0;
  std::size_t bad_size = 0;
  ExperimentResult escape;
  double success_probability = 0.0;  ///< (n - m) / (n - 1)
  double formula_mean = 0.0;         ///< (n - 1) / (n - m)
  double exact_mean = 0.0;           ///< absorbing-chain solve
  std::vector<double> empirical_survival;  ///< P(T > k), k = 1..10
  std::vector<double> geometric_survival;
  double max_survival_gap = 0.0;
  double mean_relative_error = 0.0;  ///< |mean - formula| / formula
};

/// SRW escape from the first m vertices of K_n, started at vertex 0.
EscapeCheck escape_geometry_check(std::size_t n, std::size_t m, std::size_t trials, std::uint64_t seed,
                                  int workers = 0);
/// max_k |empirical P(T > k) - (1 - p)^k| for k = 1..10.
double survival_gap(const std::vector<double>& empirical, double p);
std::vector<double> empirical_survival(const std::vector<double>& samples, int max_k);

// ------------------------------------------------------------ trees

struct TreeCheck {
  std::size_t root_degree = 0;
  std::uint64_t subtree_sum = 0;  ///< sum over u != r of |T_u|
  double lower = 0.0;             ///< (1 - 1/deg r) 2 sum |T_u|
  double upper = 0.0;             ///< sum over edges (u child of v) of 2|T_u| + 1
  double delta = 0.05;
  CoverCampaign campaign;
  bool pass = false;
};

TreeCheck tree_bound_check(const RootedTree& tree, std::size_t trials, std::uint64_t seed, int workers = 0);

// ------------------------------------------------------------ hypercube

struct HypercubeCheck {
  int d = 0;
  CoverCampaign grw;
  ExperimentResult srw_vertex_cover;
  double pooled_se = 0.0;
  bool coupling_pass = false;  ///< mean overhead <= mean vertex cover + 3 pooled SE
  bool linear_pass = false;    ///< mean overhead <= |E|
};

HypercubeCheck hypercube_coupling_check(int d, std::size_t trials, std::uint64_t seed, int workers = 0);

// ------------------------------------------------------------ girth bound

inline constexpr double kGirthBoundConstant = 50.0;

struct GirthCheck {
  CoverCampaign campaign;
  int girth = 0;
  SpectralEstimate spectral;
  double implied_constant = 0.0;  ///< overhead (1 - lambda) g / (|E| ln n)
  bool pass = false;
};

GirthCheck girth_bound_check(const std::string& graph_id, const Graph& h, const Rule& rule, std::size_t trials,
                             std::uint64_t seed, int workers = 0);

// ------------------------------------------------------------ adversarial lower bound

struct AdversarialCheck {
  std::size_t n = 0;  ///< vertices of H x K_3
  CoverCampaign adversarial;
  CoverCampaign random;
  std::size_t residue_failures = 0;  ///< trials whose first stuck residue was not the fiber triangles
  std::size_t first_part_failures = 0;
  double ratio = 0.0;  ///< adversarial mean overhead / (n ln n)
};

AdversarialCheck adversarial_lower_bound_check(const std::string& graph_id, const Graph& h, std::size_t trials,
                                               std::uint64_t seed, int workers = 0);

// ------------------------------------------------------------ transience

struct TransienceTrial {
  std::uint64_t return_count = 0;
  std::uint64_t steps = 0;
  std::uint64_t distinct_edges = 0;
  std::uint64_t stuck_count = 0;
  std::uint64_t closure_violations = 0;
  bool truncated = false;
  std::optional<bool> audit_valid;  ///< set for audited trials
};

struct TransienceCampaign {
  LatticeSpec spec;
  WalkKind kind = WalkKind::Greedy;
  std::string rule;
  std::uint64_t horizon = 0;
  std::uint64_t seed = 0;
  std::vector<TransienceTrial> trials;
  ExperimentResult returns;

  double tail_fraction(std::uint64_t threshold) const;  ///< fraction with returns > threshold
  std::size_t audited() const;
  std::size_t audit_failures() const;
  std::uint64_t closure_violations() const;
};

/// audit_trials: the first this many trials record their trajectory and are
/// replayed with audit_lattice_trajectory.
TransienceCampaign transience_campaign(const LatticeSpec& spec, WalkKind kind, const Rule& rule,
                                       std::uint64_t horizon, std::size_t trials, std::uint64_t seed,
                                       std::size_t audit_trials = 0, int workers = 0);

inline constexpr const char* kTransienceCsvHeader =
    "campaign,dimension,epsilon,kind,rule,seed,trial,horizon,steps,return_count,distinct_edges,stuck_count,truncated";
void write_transience_rows(std::ostream& out, const std::string& campaign, const TransienceCampaign& c);

// ------------------------------------------------------------ range ratio

struct RangeRow {
  std::uint64_t t = 0;
  ExperimentResult grw;
  ExperimentResult srw;
  double ratio = 0.0;
  double ratio_ci_half_width = 0.0;  ///< delta method over independent estimates
  bool pass = false;                 ///< ratio >= 1/2 - half width
};

std::vector<RangeRow> range_ratio_campaign(const Graph& g, const std::vector<std::uint64_t>& t_values,
                                           std::size_t trials, std::uint64_t seed, int workers = 0);

inline constexpr const char* kRangeCsvHeader =
    "campaign,graph,t,trials,mean_grw,ci_grw,mean_srw,ci_srw,ratio,ratio_ci_half_width,pass";
void write_range_rows(std::ostream& out, const std::string& campaign, const std::string& graph_id,
                      const std::vector<RangeRow>& rows);

// ------------------------------------------------------------ misc

/// Decimal text of x that round-trips through strtod, for CSV output.
std::string format_double(double x);

}  // namespace grw
