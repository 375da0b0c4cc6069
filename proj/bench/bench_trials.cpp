#include <benchmark/benchmark.h>

#include "grw/generators.hpp"
#include "grw/lattice.hpp"
#include "grw/mirror.hpp"
#include "grw/parallel.hpp"
#include "grw/walk.hpp"

using namespace grw;

namespace {

// Edge covers of a random 4-regular graph; workers = 1 takes the serial
// reference path, larger counts the OpenMP kernel.
void BM_cover_trials(benchmark::State& state) {
  static const Graph g = gen_random_regular(400, 4, 1, true);
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto out = run_trials(64, workers, make_no_scratch, [&](std::size_t i, NoScratch&) {
      return run_until_edge_cover(g, Rule::uniform_random(), 0, i).cover_time;
    });
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * 64);
}

void BM_cover_trials_serial(benchmark::State& state) {
  static const Graph g = gen_random_regular(400, 4, 1, true);
  for (auto _ : state) {
    auto out = run_trials_serial(64, make_no_scratch, [&](std::size_t i, NoScratch&) {
      return run_until_edge_cover(g, Rule::uniform_random(), 0, i).cover_time;
    });
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * 64);
}

void BM_lattice_z3(benchmark::State& state) {
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto out = run_trials(8, workers, make_no_scratch, [&](std::size_t i, NoScratch&) {
      return run_lattice({.dimension = 3}, Rule::uniform_random(), i, {.horizon = 100000}).return_count;
    });
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * 8 * 100000);
}

void BM_mirror_coupling(benchmark::State& state) {
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto c = return_probability_campaign(64, 20000, 1, workers);
    benchmark::DoNotOptimize(c.returned.mean);
  }
}

}  // namespace

BENCHMARK(BM_cover_trials_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cover_trials)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lattice_z3)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mirror_coupling)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
