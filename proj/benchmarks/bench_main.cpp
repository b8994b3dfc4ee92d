#include <benchmark/benchmark.h>

#include "corpus.hpp"
#include "rigidlab/reduction.hpp"
#include "rigidlab/rigidity.hpp"
#include "rigidlab/sparsity.hpp"

using namespace rigidlab;

static void BM_SparsityCheck(benchmark::State& state) {
  auto g = discus_and_hole(corpus::tight_instance(1, static_cast<int>(state.range(0)))).graph();
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_36_sparse(g));
  }
}
BENCHMARK(BM_SparsityCheck)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

static void BM_GenericRank(benchmark::State& state) {
  auto g = random_triangulated_sphere(static_cast<int>(state.range(0)), 7).abstract();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generic_rank(g, 1, seed++));
  }
}
BENCHMARK(BM_GenericRank)->Arg(10)->Arg(25)->Arg(50);

static void BM_CycleEnumeration(benchmark::State& state) {
  auto g = random_triangulated_sphere(static_cast<int>(state.range(0)), 3).abstract();
  for (auto _ : state) {
    long count = 0;
    enumerate_proper_cycles(g, 6, [&](const ProperCycle&) {
      ++count;
      return true;
    });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_CycleEnumeration)->Arg(10)->Arg(16)->Arg(22);

static void BM_ReduceToTree(benchmark::State& state) {
  auto fg = corpus::tight_instance(2, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduce_to_tree(fg));
  }
}
BENCHMARK(BM_ReduceToTree)->Arg(8)->Arg(12)->Arg(16);

static void BM_GluckSequence(benchmark::State& state) {
  auto s = random_triangulated_sphere(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gluck_sequence(s));
  }
}
BENCHMARK(BM_GluckSequence)->Arg(20)->Arg(50);

BENCHMARK_MAIN();
