// Microbenchmarks for the paths the verification checks hammer: pointwise
// derivative sweeps, the field right-hand side, full steps, brackets, and
// the nonlinear Legendre inversion.
#include <benchmark/benchmark.h>

#include <random>

#include "multifield/bracket.hpp"
#include "multifield/engine.hpp"
#include "multifield/legendre.hpp"

using namespace multifield;

namespace {

Grid ring(int n) {
  return Grid::periodic(1, {n, 1, 1}, {2.0 * M_PI, 1.0, 1.0});
}

void BM_DerivedFields(benchmark::State& state, const char* id) {
  const MaterialModel m = default_registry().make(id);
  std::mt19937_64 rng(1);
  const StatePoint sp = random_state_point(m, rng);
  for (auto _ : state) benchmark::DoNotOptimize(derived_fields(m, sp));
}

void BM_HamiltonRhs(benchmark::State& state, const char* id) {
  const MaterialModel m = default_registry().make(id);
  const Grid g = ring(static_cast<int>(state.range(0)));
  const BoundarySpec bc;
  const CanonicalState s = smooth_state(m, g, 2, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(hamilton_rhs(m, g, bc, s));
  state.SetItemsProcessed(state.iterations() * g.node_count());
}

void BM_Step(benchmark::State& state, const char* id) {
  const MaterialModel m = default_registry().make(id);
  const Grid g = ring(static_cast<int>(state.range(0)));
  const BoundarySpec bc;
  CanonicalState s = smooth_state(m, g, 2, 0.1);
  for (auto _ : state) {
    s = step(m, g, bc, s, 1e-4);
    benchmark::DoNotOptimize(s.p);
  }
  state.SetItemsProcessed(state.iterations() * g.node_count());
}

void BM_Bracket(benchmark::State& state) {
  const MaterialModel m = default_registry().make("M2-director");
  const Grid g = ring(32);
  const BoundarySpec bc;
  const CanonicalState s = smooth_state(m, g, 4, 0.1);
  const FunctionalSpec H = hamiltonian_functional();
  const FunctionalSpec P = linear_momentum_functional(Vec3(1.0, 0.0, 0.0));
  for (auto _ : state) benchmark::DoNotOptimize(bracket(P, H, m, g, bc, s));
}

void BM_LegendreQuartic(benchmark::State& state) {
  const MaterialModel m = default_registry().make("quartic-chi");
  const VecX nu = VecX::Zero(3);
  VecX mu(3);
  mu << 0.0, 3.0, 0.4;
  for (auto _ : state)
    benchmark::DoNotOptimize(invert_micro_momentum(m, 2.0, nu, mu));
}

}  // namespace

BENCHMARK_CAPTURE(BM_DerivedFields, m1, "M1");
BENCHMARK_CAPTURE(BM_DerivedFields, m2, "M2-director");
BENCHMARK_CAPTURE(BM_HamiltonRhs, m1, "M1")->Arg(32)->Arg(128);
BENCHMARK_CAPTURE(BM_HamiltonRhs, m2, "M2-director")->Arg(32)->Arg(128);
BENCHMARK_CAPTURE(BM_Step, m1, "M1")->Arg(32)->Arg(128);
BENCHMARK_CAPTURE(BM_Step, m2, "M2-director")->Arg(32)->Arg(128);
BENCHMARK(BM_Bracket);
BENCHMARK(BM_LegendreQuartic);

BENCHMARK_MAIN();
