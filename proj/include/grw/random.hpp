#pragma once

#include <cstdint>
#include <random>

namespace grw {

using Rng = std::mt19937_64;

/// Generator seeded from (master seed, stream index) through std::seed_seq.
/// Each trial of a campaign owns stream `trial`, so results do not depend on
/// which worker runs the trial or in which order.
inline Rng make_rng(std::uint64_t master_seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

/// Uniform integer in [0, bound). Lemire's multiply-shift with rejection;
/// unlike std::uniform_int_distribution the output sequence is identical on
/// every standard library.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  std::uint64_t x = rng();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = rng();
      m = static_cast<unsigned __int128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace grw
