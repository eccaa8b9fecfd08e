#include <benchmark/benchmark.h>

#include "kvn/evolve.hpp"

using namespace kvn;

namespace {

struct Setup {
  TildeTheory theory = build_theory(1, {1});
  PhaseGrid grid;
  GridRep rep;
  Expr H_tilde;
  StateVector psi;

  explicit Setup(int n)
      : grid({{Symbol::position(1), -8, 8, n}, {Symbol::momentum(1), -8, 8, n}}),
        rep(theory, grid, 1.0, {}) {
    // Harmonic tilde-Hamiltonian p~ p + q q~ with unit parameters.
    H_tilde = Expr(Symbol::tilde_momentum(1)) * Expr(Symbol::momentum(1)) +
              Expr(Symbol::position(1)) * Expr(Symbol::tilde_position(1));
    psi = make_gaussian(grid, {{1.0, 0.7071, 0.0}, {0.0, 0.7071, 0.0}}, 1.0);
  }
};

void bm_apply(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)));
  Field out;
  for (auto _ : state) {
    s.rep.apply(s.H_tilde, s.psi.amplitude, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * s.grid.total_points());
}
BENCHMARK(bm_apply)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void bm_rk4_step(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)));
  EvolveOptions options;
  options.dt = 1e-3;
  options.steps = 1;
  for (auto _ : state) {
    TrajectoryRecord traj = evolve(s.psi, s.H_tilde, s.rep, options);
    benchmark::DoNotOptimize(traj.samples.data());
  }
  state.SetItemsProcessed(state.iterations() * s.grid.total_points());
}
BENCHMARK(bm_rk4_step)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void bm_expectation(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        s.rep.expectation(s.psi, Expr(Symbol::tilde_momentum(1))));
  }
}
BENCHMARK(bm_expectation)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
