#include <benchmark/benchmark.h>

#include "filldist/chains.hpp"
#include "filldist/complex.hpp"
#include "filldist/embed.hpp"
#include "filldist/rng.hpp"
#include "filldist/spectra.hpp"

using namespace filldist;

namespace {

Complex2 sampled(int n, double p, std::uint64_t seed) {
  SeededRng rng(seed);
  return sample_lm(n, p, rng);
}

void BM_SampleComplex(benchmark::State& state) {
  int n = int(state.range(0));
  for (auto _ : state) {
    SeededRng rng(42);
    Complex2 X = sample_lm(n, 0.5, rng);
    benchmark::DoNotOptimize(X.face_count());
  }
}
BENCHMARK(BM_SampleComplex)->Arg(20)->Arg(40)->Arg(60);

void BM_FillSolverFactorization(benchmark::State& state) {
  Complex2 X = sampled(int(state.range(0)), 0.6, 7);
  for (auto _ : state) {
    FillSolver solver(X);
    benchmark::DoNotOptimize(&solver);
  }
}
BENCHMARK(BM_FillSolverFactorization)->Arg(10)->Arg(14);

void BM_AllTriangleFills(benchmark::State& state) {
  Complex2 X = sampled(int(state.range(0)), 0.6, 7);
  for (auto _ : state) {
    FillSummary s = all_triangle_fills(X);
    benchmark::DoNotOptimize(s.infeasible);
  }
}
BENCHMARK(BM_AllTriangleFills)->Arg(8)->Arg(10)->Arg(12);

void BM_Lambda1(benchmark::State& state) {
  Complex2 X = sampled(int(state.range(0)), 0.5, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambda_k(X, 1));
  }
}
BENCHMARK(BM_Lambda1)->Arg(12)->Arg(20)->Arg(28);

void BM_Betti1(benchmark::State& state) {
  Complex2 X = sampled(int(state.range(0)), 0.5, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(betti1_real(X));
  }
}
BENCHMARK(BM_Betti1)->Arg(12)->Arg(20)->Arg(28);

void BM_InequalityReport(benchmark::State& state) {
  int n = int(state.range(0));
  Complex2 X = new_complete(n);
  SeededRng rng(3);
  Embedding emb = random_gaussian_embedding(n, n, rng);
  FillSummary fills = all_triangle_fills(X);
  double lam = lambda_k(X, 1);
  for (auto _ : state) {
    InequalityReport r = main_inequality_report(X, emb, fills, lam);
    benchmark::DoNotOptimize(r.holds);
  }
}
BENCHMARK(BM_InequalityReport)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
