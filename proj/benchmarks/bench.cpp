#include <benchmark/benchmark.h>

#include <random>

#include "grd/bisub.hpp"
#include "grd/pbf.hpp"
#include "grd/relax.hpp"
#include "grd/roofdual.hpp"

namespace {

grd::QuadraticPBF random_quadratic(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto coef = [&] { return grd::Rational((long)(rng() % 21) - 10, 1 + (long)(rng() % 4)); };
  grd::QuadraticPBF f(n);
  for (int i = 0; i < n; ++i) f.unary(i) = {coef(), coef()};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng() % 2) {
        grd::PairwiseTable t;
        t.v = {{{coef(), coef()}, {coef(), coef()}}};
        f.set_edge(i, j, t);
      }
  return f;
}

void BM_roofdual_solve(benchmark::State& state) {
  auto f = random_quadratic((int)state.range(0), 7);
  for (auto _ : state) {
    auto r = grd::solve_roofdual(f);
    benchmark::DoNotOptimize(r.bound);
  }
}
BENCHMARK(BM_roofdual_solve)->Arg(8)->Arg(16)->Arg(32);

void BM_bisub_check(benchmark::State& state) {
  auto g = grd::build_roofdual(random_quadratic(3, 11)).to_half_function();
  auto method = (grd::CheckMethod)state.range(0);
  for (auto _ : state) {
    auto r = grd::check_bisubmodular(g, method);
    benchmark::DoNotOptimize(r.bisubmodular);
  }
}
BENCHMARK(BM_bisub_check)->DenseRange(0, 3);

void BM_tightest_relaxation(benchmark::State& state) {
  auto q = random_quadratic(3, 13);
  grd::PBFTable f = q.expand();
  auto cls = (grd::RelaxationClass)state.range(0);
  for (auto _ : state) {
    auto r = grd::tightest_relaxation(f, cls);
    benchmark::DoNotOptimize(r.tstar);
  }
}
BENCHMARK(BM_tightest_relaxation)->Arg(0)->Arg(1);

}  // namespace
