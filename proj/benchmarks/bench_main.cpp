#include <benchmark/benchmark.h>

#include "chenbounds/forge.hpp"
#include "chenbounds/inequalities.hpp"

using namespace chen;

namespace {

SubmanifoldPoint instance(int n) {
  GeneratorSpec spec;
  spec.m = n;
  spec.n = n;
  spec.seed = 7;
  spec.f_source = FCoefficients{0.7, -0.4, 0.6, 1.2, 0.5, -0.8, 1.1};
  return make_random_submanifold(make_ambient(spec), n, 1.0, 7);
}

void bm_ambient_curvature(benchmark::State& state) {
  SubmanifoldPoint s = instance(static_cast<int>(state.range(0)));
  Vec u = s.tangent_frame().col(0), v = s.tangent_frame().col(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(ambient_curvature(s.ambient(), u, v, v, u));
}
BENCHMARK(bm_ambient_curvature)->Arg(3)->Arg(5);

void bm_sectional(benchmark::State& state) {
  SubmanifoldPoint s = instance(static_cast<int>(state.range(0)));
  Rng g(3);
  Vec u = g.unit_vector(s.n()), v = g.unit_vector(s.n());
  Subspace pi(orthonormalize_columns([&] {
    Mat b(s.n(), 2);
    b.col(0) = u;
    b.col(1) = v;
    return b;
  }()));
  for (auto _ : state) benchmark::DoNotOptimize(sectional_curvature(s, pi));
}
BENCHMARK(bm_sectional)->Arg(3)->Arg(5);

void bm_scalar_identity(benchmark::State& state) {
  SubmanifoldPoint s = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_scalar_identity(s));
}
BENCHMARK(bm_scalar_identity)->Arg(3)->Arg(5);

void bm_inf_sectional(benchmark::State& state) {
  SubmanifoldPoint s = instance(static_cast<int>(state.range(0)));
  SearchBudget budget;
  budget.samples = 512;
  budget.multistarts = 4;
  for (auto _ : state) benchmark::DoNotOptimize(inf_sectional(s, budget));
}
BENCHMARK(bm_inf_sectional)->Arg(3)->Arg(5);

void bm_delta_invariant(benchmark::State& state) {
  SubmanifoldPoint s = instance(static_cast<int>(state.range(0)));
  SearchBudget budget;
  budget.samples = 256;
  budget.multistarts = 4;
  TupleSpec t{{2}};
  for (auto _ : state) benchmark::DoNotOptimize(delta_invariant(s, t, budget));
}
BENCHMARK(bm_delta_invariant)->Arg(4)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
