#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "grw/random.hpp"
#include "grw/stats.hpp"

namespace grw {

/// Headings on Z^2, numbered like lattice directions: E = +x, W = -x,
/// N = +y, S = -y.
enum class Heading : std::uint8_t { E = 0, W = 1, N = 2, S = 3 };
/// NE_SW is "/", NW_SE is "\".
enum class Mirror : std::uint8_t { None = 0, NE_SW = 1, NW_SE = 2 };

Heading reflect(Mirror m, Heading h);
Heading reverse(Heading h);
/// The unique mirror turning incoming heading h into outgoing heading out.
/// Throws InvalidParameter when out reverses h.
Mirror mirror_for_turn(Heading h, Heading out);
char to_char(Heading h);

struct Site {
  std::int32_t x = 0;
  std::int32_t y = 0;
  friend bool operator==(const Site&, const Site&) = default;
};
Site advance(Site s, Heading h);

/// Lazily sampled mirror configuration. A site's mirror is fixed the first
/// time it is set or sampled and never changes afterwards.
class MirrorField {
 public:
  std::optional<Mirror> get(Site s) const;
  /// Fixes the mirror at s. Throws Validation if s already holds a different one.
  void set(Site s, Mirror m);
  /// Existing mirror at s, or a fresh one uniform over the three kinds.
  Mirror get_or_sample(Site s, Rng& rng);
  std::size_t size() const { return sites_.size(); }

 private:
  static std::uint64_t key(Site s);
  absl::flat_hash_map<std::uint64_t, Mirror> sites_;
};

struct ParticleRun {
  std::vector<Site> trajectory;  ///< positions at times 0..steps
  std::uint64_t steps = 0;
  bool periodic = false;
  std::uint64_t period = 0;  ///< set when periodic
  bool truncated = false;    ///< horizon or state cap hit first
};

/// Moves the particle from (start, heading) for at most horizon steps: step,
/// then reflect on the mirror found at the new site (sampled from rng when
/// missing; pass no rng to require a fully specified field). Stops when a
/// (position, heading) state repeats.
ParticleRun run_particle(MirrorField& field, Site start, Heading heading, std::uint64_t horizon,
                         Rng* rng = nullptr, std::size_t max_states = std::size_t{1} << 26);

struct CoupledRun {
  std::uint64_t seed = 0;
  std::uint64_t horizon = 0;
  std::optional<std::uint64_t> first_return;           ///< GRW
  std::optional<std::uint64_t> particle_first_return;  ///< particle
  std::uint64_t agree_until = 0;  ///< positions equal at times 0..agree_until
  std::uint64_t forced_moves = 0;  ///< revisits where GRW had one untraversed edge
  bool periodic = false;          ///< particle orbit closed within horizon
  bool diverged = false;          ///< set instead of throwing inside campaigns
  std::vector<Site> grw;          ///< filled when recording
  std::vector<Site> particle;
};

/// GRW-RAND on Z^2 and the mirror particle driven by the same choices up to
/// the first return to the origin (or the horizon). At a fresh site GRW's
/// uniform choice among its three untraversed edges fixes that site's mirror;
/// at a revisited site the particle reflects and GRW must take the same edge.
/// Afterwards the particle continues alone, with fresh mirrors drawn from the
/// same generator, to decide periodicity within the horizon. Throws
/// CouplingViolation if the two walks differ before the first return.
CoupledRun coupled_run(std::uint64_t seed, std::uint64_t horizon, bool record = false);

struct ReturnCampaign {
  std::uint64_t seed = 0;
  std::uint64_t horizon = 0;
  std::vector<CoupledRun> runs;  ///< trial i uses seed + i
  std::size_t divergences = 0;   ///< runs that raised CouplingViolation
  std::size_t indicator_mismatches = 0;
  ExperimentResult returned;     ///< indicator of a return within the horizon
  double undecided_fraction = 0.0;
};

ReturnCampaign return_probability_campaign(std::size_t trials, std::uint64_t horizon, std::uint64_t seed,
                                           int workers = 0);

inline constexpr const char* kMirrorCsvHeader = "seed,horizon,first_return_time_or_-1,agree_until,periodic_flag";
void write_mirror_rows(std::ostream& out, const ReturnCampaign& c);

}  // namespace grw
