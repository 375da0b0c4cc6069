#include "grw/stats.hpp"

#include <cmath>

#include "grw/error.hpp"

namespace grw {

Moments merge(const Moments& a, const Moments& b) {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  Moments out;
  out.count = a.count + b.count;
  const double delta = b.mean - a.mean;
  const double nb_over_n = static_cast<double>(b.count) / static_cast<double>(out.count);
  out.mean = a.mean + delta * nb_over_n;
  out.m2 = a.m2 + b.m2 + delta * delta * static_cast<double>(a.count) * nb_over_n;
  return out;
}

Moments pairwise_moments(std::span<const double> values) {
  if (values.empty()) return {};
  if (values.size() <= 8) {
    Moments m;
    for (double x : values) m = merge(m, Moments::of(x));
    return m;
  }
  const std::size_t half = values.size() / 2;
  return merge(pairwise_moments(values.first(half)), pairwise_moments(values.subspan(half)));
}

double ExperimentResult::standard_error() const {
  return trials > 0 ? std::sqrt(variance / static_cast<double>(trials)) : 0.0;
}

ExperimentResult summarize(std::span<const double> values, std::span<const char> truncated,
                           std::uint64_t master_seed) {
  require(truncated.empty() || truncated.size() == values.size(), ErrorCode::InvalidParameter,
          "truncation flags must match values");
  ExperimentResult r;
  r.master_seed = master_seed;
  r.values.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!truncated.empty() && truncated[i]) {
      ++r.truncated;
    } else {
      r.values.push_back(values[i]);
    }
  }
  const Moments m = pairwise_moments(r.values);
  r.trials = m.count;
  r.mean = m.mean;
  r.variance = m.variance();
  r.ci_half_width = kZ95 * r.standard_error();
  return r;
}

ExperimentResult summarize(std::span<const double> values, std::uint64_t master_seed) {
  return summarize(values, std::span<const char>{}, master_seed);
}

}  // namespace grw
