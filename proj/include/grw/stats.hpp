#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace grw {

/// Count, mean and sum of squared deviations; merged with Chan's update so
/// that aggregation can be done pairwise in a fixed order.
struct Moments {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  static Moments of(double x) { return {1, x, 0.0}; }
  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
};

Moments merge(const Moments& a, const Moments& b);

/// Pairwise (recursive halving) reduction in index order.
Moments pairwise_moments(std::span<const double> values);

inline constexpr double kZ95 = 1.96;

struct ExperimentResult {
  std::vector<double> values;  ///< non-truncated trials, in trial order
  double mean = 0.0;
  double variance = 0.0;       ///< unbiased sample variance
  double ci_half_width = 0.0;  ///< 1.96 sqrt(variance / trials)
  std::size_t trials = 0;      ///< trials contributing to the mean
  std::size_t truncated = 0;   ///< trials excluded because they hit a cap
  std::uint64_t master_seed = 0;

  double standard_error() const;
};

/// Builds a result from per-trial values. Entries flagged truncated are
/// counted separately and excluded from the moments.
ExperimentResult summarize(std::span<const double> values, std::span<const char> truncated,
                           std::uint64_t master_seed);
ExperimentResult summarize(std::span<const double> values, std::uint64_t master_seed);

}  // namespace grw
