#include "lowrank/almost.hpp"
#include "lowrank/interlace.hpp"
#include "lowrank/multiset.hpp"
#include "lowrank/normalcheck.hpp"
#include "lowrank/random.hpp"
#include "lowrank/weyr.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace lowrank;

ComplexMultiset random_points(int n, Rng& rng) {
  std::vector<Complex> v;
  for (int i = 0; i < n; ++i) v.push_back(random_complex(rng));
  return ComplexMultiset(v, 1e-12);
}

void BM_DcDistance(benchmark::State& state) {
  Rng rng(1);
  const int n = static_cast<int>(state.range(0));
  const ComplexMultiset a = random_points(n, rng);
  const ComplexMultiset b = random_points(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(dc_distance(a, b));
}
BENCHMARK(BM_DcDistance)->Arg(4)->Arg(8)->Arg(16);

void BM_HermitianAssign(benchmark::State& state) {
  Rng rng(2);
  const auto n = state.range(0);
  const ComplexMatrix a = random_hermitian(n, rng);
  std::vector<Complex> t;
  for (double x : random_distinct_reals(static_cast<std::size_t>(n), rng)) t.emplace_back(x, 0.0);
  const ComplexMultiset target(t, 1e-12);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_assign_spectrum(a, target));
}
BENCHMARK(BM_HermitianAssign)->Arg(4)->Arg(8)->Arg(16);

void BM_WeyrFromMatrix(benchmark::State& state) {
  const auto n = state.range(0);
  // Single nilpotent Jordan block.
  ComplexMatrix j = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) j(i, i + 1) = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(weyr_from_matrix(j));
}
BENCHMARK(BM_WeyrFromMatrix)->Arg(4)->Arg(8)->Arg(16);

void BM_Th4Check(benchmark::State& state) {
  Rng rng(3);
  const NormalPair p = random_commuting_normal_pair(state.range(0), 2, false, rng);
  for (auto _ : state) benchmark::DoNotOptimize(th4_check(p.a, p.b));
}
BENCHMARK(BM_Th4Check)->Arg(8)->Arg(16)->Arg(32);

void BM_CheckerboardWitness(benchmark::State& state) {
  Rng rng(4);
  std::vector<Complex> l;
  for (double x : random_distinct_reals(static_cast<std::size_t>(state.range(0)), rng)) l.emplace_back(x, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(checkerboard_witness(l));
}
BENCHMARK(BM_CheckerboardWitness)->Arg(8)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
