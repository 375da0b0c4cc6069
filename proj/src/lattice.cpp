#include "grw/lattice.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <set>

#include <absl/container/flat_hash_map.h>

#include "grw/error.hpp"

namespace grw {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void validate(const LatticeSpec& spec) {
  require(spec.dimension >= 1 && spec.dimension <= kMaxLatticeDimension, ErrorCode::InvalidParameter,
          "lattice dimension must be in [1, 8]");
  if (spec.epsilon) {
    require(*spec.epsilon > 0.0 && *spec.epsilon <= 1.0, ErrorCode::InvalidParameter,
            "deletion exponent must lie in (0, 1]");
    require(spec.dimension >= 2, ErrorCode::InvalidParameter, "edge deletion needs dimension >= 2");
  }
}

std::int64_t deletion_budget(std::int64_t r, double epsilon) {
  return r <= 0 ? 0 : static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(r), 1.0 - epsilon) + 1e-9));
}

// Packs a point into 64 bits, 64/d bits per coordinate.
class Packing {
 public:
  explicit Packing(int d) : d_(d), bits_(64 / d) {
    offset_ = bits_ == 64 ? std::uint64_t{1} << 63 : std::uint64_t{1} << (bits_ - 1);
    limit_ = static_cast<std::int64_t>(offset_ - 2);
  }

  std::uint64_t key(const std::int64_t* p) const {
    std::uint64_t k = 0;
    for (int a = 0; a < d_; ++a) k |= (static_cast<std::uint64_t>(p[a]) + offset_) << shift(a);
    return k;
  }
  int shift(int axis) const { return bits_ == 64 ? 0 : bits_ * axis; }
  std::int64_t limit() const { return limit_; }

 private:
  int d_;
  int bits_;
  std::uint64_t offset_;
  std::int64_t limit_;
};

}  // namespace

std::vector<LatticeDeletion> lattice_deletions(const LatticeSpec& spec, std::int64_t max_radius) {
  validate(spec);
  std::vector<LatticeDeletion> out;
  if (!spec.epsilon) return out;
  const int d = spec.dimension;
  std::set<std::pair<LatticePoint, int>> seen;
  for (std::int64_t r = 1; r <= max_radius; ++r) {
    const std::int64_t fresh = deletion_budget(r, *spec.epsilon) - deletion_budget(r - 1, *spec.epsilon);
    for (std::int64_t j = 0; j < fresh; ++j) {
      std::uint64_t h = splitmix64(spec.deletion_seed ^ splitmix64(static_cast<std::uint64_t>(r) * 1315423911ULL + j));
      const int axis = static_cast<int>(h % static_cast<std::uint64_t>(d));
      const bool positive = (h >> 32) & 1;
      LatticePoint p(d);
      for (int a = 0; a < d; ++a) {
        h = splitmix64(h);
        p[a] = static_cast<std::int64_t>(h % static_cast<std::uint64_t>(2 * r + 1)) - r;
      }
      // Edge between |p_axis| = r and r - 1; keep its lower endpoint.
      p[axis] = positive ? r - 1 : -r;
      if (seen.emplace(p, axis).second) out.push_back({p, axis, r});
    }
  }
  return out;
}

LatticeResult run_lattice(const LatticeSpec& spec, const Rule& rule, Rng& rng, const LatticeOptions& options) {
  validate(spec);
  require(options.horizon >= 1, ErrorCode::InvalidParameter, "horizon must be >= 1");
  require(options.kind != WalkKind::VertexGreedy, ErrorCode::InvalidParameter,
          "lattice walks support grw and srw");
  require(rule.kind() == Rule::Kind::UniformRandom || rule.kind() == Rule::Kind::LeastIndex,
          ErrorCode::InvalidParameter, "lattice walks support the rand and least rules");

  const int d = spec.dimension;
  const Packing pack(d);
  const bool greedy = options.kind == WalkKind::Greedy;
  const bool least = rule.kind() == Rule::Kind::LeastIndex;
  const std::uint32_t all_dirs = (std::uint32_t{1} << (2 * d)) - 1;

  const std::int64_t max_radius =
      static_cast<std::int64_t>(std::min<std::uint64_t>(options.horizon, static_cast<std::uint64_t>(pack.limit())));
  absl::flat_hash_map<std::uint64_t, std::uint32_t> deleted;
  for (const LatticeDeletion& del : lattice_deletions(spec, max_radius)) {
    LatticePoint upper = del.lower;
    ++upper[del.axis];
    deleted[pack.key(del.lower.data())] |= std::uint32_t{1} << (2 * del.axis);
    deleted[pack.key(upper.data())] |= std::uint32_t{1} << (2 * del.axis + 1);
  }

  // Per vertex: traversed directions in the low 16 bits, deleted ones above.
  absl::flat_hash_map<std::uint64_t, std::uint32_t> sites;
  const std::size_t cap = static_cast<std::size_t>(
      std::min<std::uint64_t>(options.horizon + 1, static_cast<std::uint64_t>(options.max_vertices)));
  sites.reserve(cap);
  auto fresh_entry = [&](std::uint64_t key) -> std::uint32_t {
    if (deleted.empty()) return 0;
    auto it = deleted.find(key);
    return it == deleted.end() ? 0 : it->second << 16;
  };

  LatticeResult res;
  res.even_degree = !spec.epsilon.has_value();
  LatticePoint pos(d, 0);
  const std::uint64_t origin = pack.key(pos.data());
  std::uint64_t key = origin;
  std::uint32_t* cur = &sites.try_emplace(key, fresh_entry(key)).first->second;
  if (options.record_trajectory) {
    res.trajectory.emplace();
    res.trajectory->reserve((options.horizon + 1) * static_cast<std::size_t>(d));
    res.trajectory->insert(res.trajectory->end(), pos.begin(), pos.end());
  }

  bool in_greedy = false;
  std::uint64_t part_start = 0;
  std::uint64_t part_start_key = origin;

  for (std::uint64_t t = 0; t < options.horizon; ++t) {
    const std::uint32_t present = all_dirs & ~(*cur >> 16);
    const std::uint32_t fresh = present & ~*cur;
    if (greedy) {
      if (fresh == 0 && in_greedy) {
        in_greedy = false;
        ++res.stuck_count;
        if (res.even_degree) {
          if (key != part_start_key) ++res.closure_violations;
          if (d >= 2 && t - part_start < 4) ++res.short_part_violations;
        }
      } else if (fresh != 0 && !in_greedy) {
        in_greedy = true;
        part_start = t;
        part_start_key = key;
      }
    }
    const bool by_rule = greedy && fresh != 0;
    std::uint32_t options_mask = by_rule ? fresh : present;
    require(options_mask != 0, ErrorCode::NoMove, "lattice vertex has no present edge");
    if (least && by_rule) {
      options_mask &= -options_mask;
    } else {
      for (auto k = uniform_below(rng, static_cast<std::uint64_t>(std::popcount(options_mask))); k > 0; --k) {
        options_mask &= options_mask - 1;
      }
    }
    const int dir = std::countr_zero(options_mask);
    const int axis = dir / 2;
    const std::int64_t delta = dir % 2 == 0 ? 1 : -1;
    if (std::abs(pos[axis] + delta) > pack.limit()) {
      res.truncated = true;
      break;
    }
    const std::uint64_t next_key = delta > 0 ? key + (std::uint64_t{1} << pack.shift(axis))
                                             : key - (std::uint64_t{1} << pack.shift(axis));
    auto it = sites.find(next_key);
    if (it == sites.end()) {
      if (sites.size() >= cap) {
        res.truncated = true;
        break;
      }
      it = sites.emplace(next_key, fresh_entry(next_key)).first;
    }

    const std::uint32_t bit = std::uint32_t{1} << dir;
    const bool is_new = (*cur & bit) == 0;
    *cur |= bit;
    it->second |= std::uint32_t{1} << (dir ^ 1);
    cur = &it->second;
    key = next_key;
    pos[axis] += delta;
    ++res.steps;
    if (is_new) {
      ++res.distinct_edges;
      ++res.greedy_steps;
    } else {
      ++res.simple_steps;
    }
    if (key == origin) ++res.return_count;
    if (res.trajectory) res.trajectory->insert(res.trajectory->end(), pos.begin(), pos.end());
  }
  res.position = pos;
  res.distinct_vertices = sites.size();
  return res;
}

LatticeResult run_lattice(const LatticeSpec& spec, const Rule& rule, std::uint64_t seed,
                          const LatticeOptions& options) {
  Rng rng = make_rng(seed);
  return run_lattice(spec, rule, rng, options);
}

LatticeAudit audit_lattice_trajectory(const LatticeSpec& spec, const std::vector<std::int64_t>& trajectory) {
  validate(spec);
  const auto d = static_cast<std::size_t>(spec.dimension);
  require(!trajectory.empty() && trajectory.size() % d == 0, ErrorCode::Validation,
          "trajectory length is not a multiple of the dimension");
  const std::size_t len = trajectory.size() / d;
  auto point = [&](std::size_t t) { return LatticePoint(trajectory.begin() + t * d, trajectory.begin() + (t + 1) * d); };

  std::int64_t reach = 0;
  for (std::int64_t c : trajectory) reach = std::max(reach, std::abs(c) + 1);
  std::set<std::pair<LatticePoint, int>> removed;
  for (const auto& del : lattice_deletions(spec, reach)) removed.emplace(del.lower, del.axis);
  std::set<std::pair<LatticePoint, int>> used;

  auto edge_of = [](LatticePoint p, int axis, int sign) {
    if (sign < 0) --p[axis];
    return std::pair{std::move(p), axis};
  };
  auto has_fresh = [&](const LatticePoint& p) {
    for (std::size_t a = 0; a < d; ++a) {
      for (int sign : {1, -1}) {
        auto e = edge_of(p, static_cast<int>(a), sign);
        if (!removed.count(e) && !used.count(e)) return true;
      }
    }
    return false;
  };

  LatticeAudit audit;
  auto fail = [&](std::size_t t, const std::string& what) {
    audit.valid = false;
    audit.failure = "step " + std::to_string(t) + ": " + what;
    return audit;
  };
  const bool even = !spec.epsilon.has_value();

  std::vector<LatticePoint> spliced;
  bool in_greedy = false;
  LatticePoint part_start;
  for (std::size_t t = 0; t + 1 < len; ++t) {
    const LatticePoint from = point(t), to = point(t + 1);
    int axis = -1, sign = 0, diffs = 0;
    for (std::size_t a = 0; a < d; ++a) {
      const std::int64_t delta = to[a] - from[a];
      if (delta == 0) continue;
      ++diffs;
      axis = static_cast<int>(a);
      sign = delta == 1 ? 1 : delta == -1 ? -1 : 0;
    }
    if (diffs != 1 || sign == 0) return fail(t, "consecutive points are not lattice neighbours");
    auto e = edge_of(from, axis, sign);
    if (removed.count(e)) return fail(t, "walk uses a deleted edge");

    const bool fresh_here = has_fresh(from);
    const bool is_new = !used.count(e);
    if (fresh_here && !is_new) return fail(t, "greedy step repeated an edge");
    if (fresh_here && !in_greedy) {
      in_greedy = true;
      part_start = from;
    } else if (!fresh_here && in_greedy) {
      in_greedy = false;
      ++audit.parts;
      if (even && from != part_start) return fail(t, "greedy part did not close its cycle");
    }
    if (!fresh_here) {
      ++audit.simple_steps;
      if (spliced.empty() || spliced.back() != from) spliced.push_back(from);
      spliced.push_back(to);
    }
    used.insert(e);
  }
  if (even) {
    for (std::size_t i = 1; i < spliced.size(); ++i) {
      std::int64_t l1 = 0;
      for (std::size_t a = 0; a < d; ++a) l1 += std::abs(spliced[i][a] - spliced[i - 1][a]);
      if (l1 != 1) return fail(i, "spliced simple parts are not a nearest-neighbour walk");
    }
  }
  return audit;
}

}  // namespace grw
