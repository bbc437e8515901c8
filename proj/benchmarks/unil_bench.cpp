#include <benchmark/benchmark.h>

#include <random>

#include "unil/complexes.hpp"
#include "unil/forms.hpp"
#include "unil/rim.hpp"
#include "unil/witt.hpp"

namespace {

using namespace unil;

PolyInt x_pow(std::size_t k) { return PolyInt::monomial(Integer(1), k); }

// p1 = x^d + x, p2 = x^d, g = 1 + x: degree grows with the argument.
void BM_MachineRelation1(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const PolyInt p1 = x_pow(d) + x_pow(1), p2 = x_pow(d), g = PolyInt(1) + x_pow(1);
  const RelationInstance inst = additivity_instance(p1, p2, g);
  for (auto _ : state) benchmark::DoNotOptimize(run_machine(inst.formation, inst.data));
}
BENCHMARK(BM_MachineRelation1)->Arg(1)->Arg(3)->Arg(8);

void BM_ArfOfBlockSum(benchmark::State& state) {
  const auto blocks = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  FormF2 form = make_P(PolyF2::x(), PolyF2::x());
  for (std::size_t i = 1; i < blocks; ++i) {
    PolyF2 p, g;
    for (std::size_t k = 0; k < 12; ++k) {
      if (rng() & 1) p.set(k, true);
      if (rng() & 1) g.set(k, true);
    }
    form = direct_sum(form, make_P(p, g));
  }
  for (auto _ : state) benchmark::DoNotOptimize(arf(form));
}
BENCHMARK(BM_ArfOfBlockSum)->Arg(1)->Arg(4)->Arg(16);

void BM_ArfNormalize(benchmark::State& state) {
  const auto deg = static_cast<std::size_t>(state.range(0));
  PolyF2 q;
  for (std::size_t k = 0; k <= deg; k += 2) q.set(k, true);
  for (auto _ : state) benchmark::DoNotOptimize(arf_normalize(q));
}
BENCHMARK(BM_ArfNormalize)->Arg(16)->Arg(256)->Arg(4096);

void BM_SolveRight(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  // Unit upper triangular with polynomial entries, so the system is exactly solvable.
  MatrixZ a = MatrixZ::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = x_pow((i + j) % 3) + PolyInt(2);
  const MatrixZ b = a * MatrixZ::scalar(n, x_pow(2) + PolyInt(1));
  for (auto _ : state) benchmark::DoNotOptimize(solve_right(a, b));
}
BENCHMARK(BM_SolveRight)->Arg(2)->Arg(6)->Arg(12);

void BM_BoundaryPq1(benchmark::State& state) {
  const PolyInt q = x_pow(static_cast<std::size_t>(state.range(0))) + x_pow(1);
  const BoundaryInput input = p_q1_input(q);
  for (auto _ : state) benchmark::DoNotOptimize(boundary(input));
}
BENCHMARK(BM_BoundaryPq1)->Arg(2)->Arg(9);

void BM_ReplayCor3(benchmark::State& state) {
  const Derivation d = cor3_derivation(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(replay(d));
}
BENCHMARK(BM_ReplayCor3)->Arg(3)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
