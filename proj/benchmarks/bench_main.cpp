// Microbenchmarks for the hot paths: counting, Minkowski sums, radical
// comparisons, and whole verification runs. Numbers here guide the budgets
// baked into the acceptance suite.

#include <benchmark/benchmark.h>

#include <utility>
#include <vector>

#include "latticebm/functions.hpp"
#include "latticebm/radical_sum.hpp"
#include "latticebm/search.hpp"
#include "latticebm/sets.hpp"
#include "latticebm/verifiers.hpp"

namespace {

using namespace latticebm;

InstanceFamily box_family(int n, std::uint64_t seed) {
  InstanceFamily fam;
  fam.kind = InstanceFamily::Kind::BoxUnion;
  fam.dimension = n;
  fam.window = 6;
  fam.density = Rational(1, 10);
  fam.max_boxes = 3;
  fam.denominator_bound = 3;
  fam.seed = seed;
  return fam;
}

void bm_count_lattice(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto pairs = generate(box_family(n, 0xbe7c1), 8);
  for (auto _ : state) {
    for (const auto& [a, b] : pairs) {
      benchmark::DoNotOptimize(count_lattice(a));
      benchmark::DoNotOptimize(count_lattice(b));
    }
  }
  state.SetItemsProcessed(state.iterations() * 2 * static_cast<long>(pairs.size()));
}
BENCHMARK(bm_count_lattice)->Arg(1)->Arg(2)->Arg(3);

void bm_minkowski_sum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto pairs = generate(box_family(n, 0xbe7c2), 8);
  for (auto _ : state) {
    for (const auto& [a, b] : pairs) benchmark::DoNotOptimize(minkowski_sum(a, b));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pairs.size()));
}
BENCHMARK(bm_minkowski_sum)->Arg(1)->Arg(2)->Arg(3);

void bm_verify_bm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto pairs = generate(box_family(n, 0xbe7c3), 8);
  for (auto _ : state) {
    for (const auto& [a, b] : pairs) {
      VerifyRequest req{"main_bm", a, b, Rational(1, 3), {}, {}, false};
      benchmark::DoNotOptimize(verify_bm(req));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pairs.size()));
}
BENCHMARK(bm_verify_bm)->Arg(1)->Arg(2)->Arg(3);

// Unequal values separated only after interval refinement; the gap between
// 5^(1/3)+7^(1/2) and 2^(1/3)+10^(1/2) is around 4e-2, one refinement round.
void bm_compare_radicals_close(benchmark::State& state) {
  const RadicalSum a = RadicalSum::root(Rational(5), 3) + RadicalSum::root(Rational(7), 2);
  const RadicalSum b = RadicalSum::root(Rational(2), 3) + RadicalSum::root(Rational(10), 2);
  for (auto _ : state) benchmark::DoNotOptimize(compare_radicals(a, b));
}
BENCHMARK(bm_compare_radicals_close);

// Equal after normalization, decided structurally without any refinement.
void bm_compare_radicals_equal(benchmark::State& state) {
  const RadicalSum a = RadicalSum::root(Rational(8), 2);
  const RadicalSum b = RadicalSum::term(Rational(2), Rational(2), 2);
  for (auto _ : state) benchmark::DoNotOptimize(compare_radicals(a, b));
}
BENCHMARK(bm_compare_radicals_equal);

PointMassFunction bench_atoms(SplitMix64& rng, int n) {
  PointMassFunction f(n);
  for (int t = 0; t < 8; ++t) {
    RatVec x(n);
    for (int j = 0; j < n; ++j) x[j] = Rational(rng.next_in(-4, 4));
    f.set(std::move(x), Rational(1 + static_cast<long>(rng.next_below(6))));
  }
  return f;
}

void bm_make_admissible_h(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SplitMix64 rng(0xbe7c4 + static_cast<std::uint64_t>(n));
  PointMassFunction f = bench_atoms(rng, n);
  PointMassFunction g = bench_atoms(rng, n);
  auto support_set = [](const PointMassFunction& fn) {
    std::vector<RatVec> pts;
    for (const auto& [x, v] : fn.support()) pts.push_back(x);
    return SetExpr::from_points(std::move(pts));
  };
  SetExpr K = support_set(f);
  SetExpr L = support_set(g);
  const ExtendedExponent p = ExtendedExponent::finite(Rational(-1, n));
  for (auto _ : state)
    benchmark::DoNotOptimize(make_admissible_h(f, g, K, L, Rational(1, 3), p, 8));
}
BENCHMARK(bm_make_admissible_h)->Arg(1)->Arg(2);

void bm_lattice_sum(benchmark::State& state) {
  SplitMix64 rng(0xbe7c5);
  PointMassFunction f = bench_atoms(rng, 2);
  std::vector<Interval1D> fs(2, Interval1D(Rational(-5), Rational(5)));
  SetExpr window = SetExpr::from_box(Box(fs));
  for (auto _ : state) benchmark::DoNotOptimize(lattice_sum(f, window));
}
BENCHMARK(bm_lattice_sum);

}  // namespace

BENCHMARK_MAIN();
