#include <benchmark/benchmark.h>

#include "nfdyn/dynsim.hpp"
#include "nfdyn/popdiff.hpp"
#include "nfdyn/torus.hpp"

using namespace nfdyn;

namespace {

MultiPolyQ nvar(unsigned deg, long coeff = 1) {
  MultiPolyQ p = MultiPolyQ::zero(1);
  p.terms[{deg}] = mpq_class(coeff);
  return p;
}

void BM_intersection_kernel(benchmark::State& state) {
  unsigned long n = static_cast<unsigned long>(state.range(0));
  GridSet g = random_set(2, n, mpq_class(1, 2), 11);
  std::vector<std::vector<long>> shifts{{3, 7}, {static_cast<long>(n / 2), 1}};
  for (auto _ : state) benchmark::DoNotOptimize(intersection_count(g, shifts));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_intersection_kernel)->Arg(256)->Arg(1024);

void BM_intersection_naive(benchmark::State& state) {
  unsigned long n = static_cast<unsigned long>(state.range(0));
  GridSet g = random_set(2, n, mpq_class(1, 2), 11);
  std::vector<std::vector<long>> shifts{{3, 7}, {static_cast<long>(n / 2), 1}};
  for (auto _ : state) benchmark::DoNotOptimize(intersection_count_naive(g, shifts));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_intersection_naive)->Arg(256);

void BM_weyl_average(benchmark::State& state) {
  PolynomialTorusSequence u;
  u.torus_dim = 1;
  u.nvars = 1;
  u.gens = {{"sqrt2", QuadReal(mpq_class(0), mpq_class(1), 2)}};
  u.coords.assign(1, SymRealPoly::zero(1));
  u.coords[0].terms[{2}] = SymbolicReal::generator_term(0);
  FolnerBox box = FolnerBox::centered(1, state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(weyl_average(ZVec{mpz_class(1)}, u, box));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          (2 * state.range(0) + 1));
}
BENCHMARK(BM_weyl_average)->Arg(10000)->Arg(100000);

void BM_interval_sweep(benchmark::State& state) {
  IntervalRotationSystem sys{QuadReal(mpq_class(0), mpq_class(1), 2),
                             IntervalSet::interval(mpq_class(0), mpq_class(3, 10))};
  long n_hi = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(multicorrelation(sys, {nvar(2), nvar(2, 2)}, 1, n_hi));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * n_hi);
}
BENCHMARK(BM_interval_sweep)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
