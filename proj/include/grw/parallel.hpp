#pragma once

#include <cstddef>
#include <exception>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace grw {

/// Worker count used when the caller passes 0.
int default_workers();

/// Serial reference: fn(trial, scratch) for trial = 0..trials-1, results in
/// trial order. The OpenMP kernel below must reproduce this exactly.
template <class MakeScratch, class Fn>
auto run_trials_serial(std::size_t trials, MakeScratch make_scratch, Fn fn) {
  using Result = decltype(fn(std::size_t{}, std::declval<decltype(make_scratch())&>()));
  std::vector<Result> out(trials);
  auto scratch = make_scratch();
  for (std::size_t t = 0; t < trials; ++t) out[t] = fn(t, scratch);
  return out;
}

/// Parallel trials. Each worker owns one scratch object; fn must derive all
/// randomness from the trial index, so the output is independent of the
/// worker count and scheduling. The exception of the lowest failing trial is
/// rethrown after the loop.
template <class MakeScratch, class Fn>
auto run_trials(std::size_t trials, int workers, MakeScratch make_scratch, Fn fn) {
  using Result = decltype(fn(std::size_t{}, std::declval<decltype(make_scratch())&>()));
  if (workers <= 0) workers = default_workers();
  if (workers == 1 || trials < 2) return run_trials_serial(trials, make_scratch, fn);

  std::vector<Result> out(trials);
  std::vector<std::exception_ptr> errors(trials);
  const auto n = static_cast<long long>(trials);
#pragma omp parallel num_threads(workers)
  {
    auto scratch = make_scratch();
#pragma omp for schedule(dynamic, 1)
    for (long long t = 0; t < n; ++t) {
      try {
        out[static_cast<std::size_t>(t)] = fn(static_cast<std::size_t>(t), scratch);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

struct NoScratch {};
inline NoScratch make_no_scratch() { return {}; }

}  // namespace grw
