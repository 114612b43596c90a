// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include <random>

#include "liftlab/liftings/construct.hpp"
#include "liftlab/sampler/generators.hpp"
#include "liftlab/sampler/search.hpp"

using namespace liftlab;

namespace {

struct ApplyFixture {
  LiftingOperator s;
  std::vector<GradedVector> probes;

  explicit ApplyFixture(std::size_t count) {
    const StrictSimilarity inst = gen_strict_similarity(8, 0.8, 1);
    s = build_natural_lifting(inst.t, inst.a);
    const Window w = window(s.shape(), 12);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    for (std::size_t i = 0; i < count; ++i) {
      Vector x(w.dim());
      for (auto& z : x) z = Complex(g(rng), g(rng));
      probes.push_back(w.from_dense(x));
    }
  }
};

void BM_ApplyAll(benchmark::State& state) {
  const ApplyFixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(f.s.op().apply_all(f.probes));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ApplyAllSerial(benchmark::State& state) {
  const ApplyFixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(apply_all_serial(f.s.op(), f.probes));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

SearchOptions search_options(std::int64_t trials) {
  return SearchOptions{"quasicontraction", 3, 6, static_cast<std::size_t>(trials), 11, {}};
}

void BM_Search(benchmark::State& state) {
  const SearchOptions opt = search_options(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search(opt));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SearchSerial(benchmark::State& state) {
  const SearchOptions opt = search_options(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search_serial(opt));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_ApplyAll)->Arg(64)->Arg(512);
BENCHMARK(BM_ApplyAllSerial)->Arg(64)->Arg(512);
BENCHMARK(BM_Search)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchSerial)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
