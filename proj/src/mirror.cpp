#include "grw/mirror.hpp"

#include <bit>
#include <ostream>

#include "grw/error.hpp"
#include "grw/parallel.hpp"

namespace grw {

namespace {

constexpr std::int64_t kCoordLimit = std::int64_t{1} << 30;

std::uint64_t site_key(Site s) {
  return (static_cast<std::uint64_t>(static_cast<std::int64_t>(s.x) + kCoordLimit) << 31) |
         static_cast<std::uint64_t>(static_cast<std::int64_t>(s.y) + kCoordLimit);
}

std::uint64_t state_key(Site s, Heading h) { return (site_key(s) << 2) | static_cast<std::uint64_t>(h); }

Heading pick(std::uint32_t mask, Rng& rng) {
  for (auto k = uniform_below(rng, static_cast<std::uint64_t>(std::popcount(mask))); k > 0; --k) mask &= mask - 1;
  return static_cast<Heading>(std::countr_zero(mask));
}

std::uint32_t bit(Heading h) { return std::uint32_t{1} << static_cast<int>(h); }

}  // namespace

Heading reflect(Mirror m, Heading h) {
  switch (m) {
    case Mirror::None:
      return h;
    case Mirror::NE_SW:  // "/": E <-> N, W <-> S
      switch (h) {
        case Heading::E: return Heading::N;
        case Heading::N: return Heading::E;
        case Heading::W: return Heading::S;
        case Heading::S: return Heading::W;
      }
      break;
    case Mirror::NW_SE:  // "\": E <-> S, W <-> N
      switch (h) {
        case Heading::E: return Heading::S;
        case Heading::S: return Heading::E;
        case Heading::W: return Heading::N;
        case Heading::N: return Heading::W;
      }
      break;
  }
  throw Error(ErrorCode::InvalidParameter, "bad mirror or heading");
}

Heading reverse(Heading h) { return static_cast<Heading>(static_cast<int>(h) ^ 1); }

Mirror mirror_for_turn(Heading h, Heading out) {
  for (Mirror m : {Mirror::None, Mirror::NE_SW, Mirror::NW_SE}) {
    if (reflect(m, h) == out) return m;
  }
  throw Error(ErrorCode::InvalidParameter, "no mirror reverses a heading");
}

char to_char(Heading h) {
  switch (h) {
    case Heading::E: return 'E';
    case Heading::W: return 'W';
    case Heading::N: return 'N';
    case Heading::S: return 'S';
  }
  return '?';
}

Site advance(Site s, Heading h) {
  switch (h) {
    case Heading::E: ++s.x; break;
    case Heading::W: --s.x; break;
    case Heading::N: ++s.y; break;
    case Heading::S: --s.y; break;
  }
  require(std::abs(static_cast<std::int64_t>(s.x)) < kCoordLimit && std::abs(static_cast<std::int64_t>(s.y)) < kCoordLimit,
          ErrorCode::InvalidParameter, "site coordinate out of range");
  return s;
}

// ------------------------------------------------------------ MirrorField

std::uint64_t MirrorField::key(Site s) { return site_key(s); }

std::optional<Mirror> MirrorField::get(Site s) const {
  auto it = sites_.find(key(s));
  if (it == sites_.end()) return std::nullopt;
  return it->second;
}

void MirrorField::set(Site s, Mirror m) {
  auto [it, fresh] = sites_.try_emplace(key(s), m);
  require(fresh || it->second == m, ErrorCode::Validation, "mirror already fixed at this site");
}

Mirror MirrorField::get_or_sample(Site s, Rng& rng) {
  auto [it, fresh] = sites_.try_emplace(key(s), Mirror::None);
  if (fresh) it->second = static_cast<Mirror>(uniform_below(rng, 3));
  return it->second;
}

// ------------------------------------------------------------ particle

ParticleRun run_particle(MirrorField& field, Site start, Heading heading, std::uint64_t horizon, Rng* rng,
                         std::size_t max_states) {
  require(horizon >= 1, ErrorCode::InvalidParameter, "horizon must be >= 1");
  ParticleRun run;
  run.trajectory.push_back(start);
  absl::flat_hash_map<std::uint64_t, std::uint64_t> seen;
  seen.emplace(state_key(start, heading), 0);
  Site pos = start;
  Heading h = heading;
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    pos = advance(pos, h);
    Mirror m;
    if (rng) {
      m = field.get_or_sample(pos, *rng);
    } else {
      auto known = field.get(pos);
      require(known.has_value(), ErrorCode::InvalidParameter, "mirror field has no entry at a visited site");
      m = *known;
    }
    h = reflect(m, h);
    run.trajectory.push_back(pos);
    run.steps = t;
    auto [it, fresh] = seen.try_emplace(state_key(pos, h), t);
    if (!fresh) {
      run.periodic = true;
      run.period = t - it->second;
      return run;
    }
    if (seen.size() >= max_states) break;
  }
  run.truncated = true;
  return run;
}

// ------------------------------------------------------------ coupling

namespace {

CoupledRun coupled_core(std::uint64_t seed, std::uint64_t horizon, bool record) {
  require(horizon >= 1, ErrorCode::InvalidParameter, "horizon must be >= 1");
  CoupledRun run;
  run.seed = seed;
  run.horizon = horizon;
  Rng rng = make_rng(seed);

  // GRW: traversed headings per site. Particle: the mirror field.
  absl::flat_hash_map<std::uint64_t, std::uint32_t> used;
  MirrorField field;
  const Site origin{0, 0};
  Site g = origin, p = origin;
  std::uint32_t* g_used = &used.try_emplace(site_key(g), 0).first->second;
  bool g_fresh_site = false;
  Heading g_in = Heading::E;  // heading GRW arrived with
  Heading p_in = Heading::E;
  Heading h0 = Heading::E;
  if (record) {
    run.grw.push_back(g);
    run.particle.push_back(p);
  }

  std::uint64_t t = 0;
  for (; t < horizon; ++t) {
    // GRW move.
    const std::uint32_t fresh = 0xFu & ~*g_used;
    Heading g_out;
    if (fresh == 0) {
      g_out = pick(0xFu, rng);
    } else {
      if (t > 0 && !g_fresh_site && std::popcount(fresh) == 1) ++run.forced_moves;
      g_out = pick(fresh, rng);
      if (g_fresh_site) field.set(g, mirror_for_turn(g_in, g_out));
    }
    // Particle move: the initial heading is GRW's first choice.
    Heading p_out;
    if (t == 0) {
      h0 = g_out;
      p_out = h0;
    } else {
      p_out = reflect(field.get_or_sample(p, rng), p_in);
    }

    *g_used |= bit(g_out);
    g = advance(g, g_out);
    auto [it, inserted] = used.try_emplace(site_key(g), 0);
    g_used = &it->second;
    *g_used |= bit(reverse(g_out));
    g_fresh_site = inserted;
    g_in = g_out;
    p = advance(p, p_out);
    p_in = p_out;
    if (record) {
      run.grw.push_back(g);
      run.particle.push_back(p);
    }
    if (g == origin) run.first_return = t + 1;
    if (p == origin) run.particle_first_return = t + 1;
    if (!(g == p)) {
      run.diverged = true;
      ++t;
      break;
    }
    run.agree_until = t + 1;
    if (run.first_return || run.particle_first_return) {
      ++t;
      break;
    }
  }
  if (run.diverged || !run.first_return) return run;

  // Particle alone from here. The dynamics are invertible, so the orbit is
  // periodic exactly when the initial state (origin, h0) comes back.
  Heading h = p_in;
  for (; t <= horizon; ++t) {
    h = reflect(field.get_or_sample(p, rng), h);
    if (p == origin && h == h0) {
      run.periodic = true;
      break;
    }
    if (t == horizon) break;
    p = advance(p, h);
    if (record) run.particle.push_back(p);
  }
  return run;
}

}  // namespace

CoupledRun coupled_run(std::uint64_t seed, std::uint64_t horizon, bool record) {
  CoupledRun run = coupled_core(seed, horizon, record);
  if (run.diverged) {
    throw Error(ErrorCode::CouplingViolation,
                "seed " + std::to_string(seed) + ": walks differ after step " + std::to_string(run.agree_until));
  }
  return run;
}

ReturnCampaign return_probability_campaign(std::size_t trials, std::uint64_t horizon, std::uint64_t seed,
                                           int workers) {
  require(trials >= 1, ErrorCode::InvalidParameter, "trials must be >= 1");
  ReturnCampaign c;
  c.seed = seed;
  c.horizon = horizon;
  c.runs = run_trials(trials, workers, make_no_scratch,
                      [&](std::size_t i, NoScratch&) { return coupled_core(seed + i, horizon, false); });
  std::vector<double> indicator;
  std::size_t undecided = 0;
  for (const CoupledRun& r : c.runs) {
    if (r.diverged) ++c.divergences;
    if (r.first_return.has_value() != r.particle_first_return.has_value() ||
        r.first_return != r.particle_first_return) {
      ++c.indicator_mismatches;
    }
    indicator.push_back(r.first_return ? 1.0 : 0.0);
    if (!r.first_return) ++undecided;
  }
  c.returned = summarize(indicator, seed);
  c.undecided_fraction = static_cast<double>(undecided) / static_cast<double>(trials);
  return c;
}

void write_mirror_rows(std::ostream& out, const ReturnCampaign& c) {
  for (const CoupledRun& r : c.runs) {
    out << r.seed << ',' << r.horizon << ',';
    if (r.first_return) {
      out << *r.first_return;
    } else {
      out << -1;
    }
    out << ',' << r.agree_until << ',' << (r.periodic ? 1 : 0) << '\n';
  }
}

}  // namespace grw
