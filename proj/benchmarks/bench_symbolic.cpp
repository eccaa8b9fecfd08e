#include <benchmark/benchmark.h>

#include <random>

#include "kvn/dynamics.hpp"

using namespace kvn;

namespace {

Expr random_poly(std::mt19937_64& rng, const std::vector<Symbol>& symbols,
                 int terms, int degree) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> deg(0, degree);
  std::uniform_int_distribution<size_t> pick(0, symbols.size() - 1);
  Expr acc;
  for (int t = 0; t < terms; ++t) {
    int c = coeff(rng);
    if (c == 0) c = 1;
    Expr term = Expr::scalar(Scalar(c));
    int d = deg(rng);
    for (int k = 0; k < d; ++k) term *= Expr(symbols[pick(rng)]);
    acc += term;
  }
  return acc;
}

std::vector<Symbol> symbols2() {
  return {Symbol::position(1), Symbol::momentum(1), Symbol::position(2),
          Symbol::momentum(2)};
}

void bm_normal_form(benchmark::State& state) {
  TildeTheory canonical = build_theory(2, {});
  std::mt19937_64 rng(7);
  std::vector<Expr> inputs;
  for (int i = 0; i < 64; ++i)
    inputs.push_back(random_poly(rng, symbols2(), 4,
                                 static_cast<int>(state.range(0))));
  size_t at = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(normal_form(inputs[at % inputs.size()],
                                         canonical.table()));
    ++at;
  }
}
BENCHMARK(bm_normal_form)->Arg(3)->Arg(5)->Arg(8);

void bm_dbracket(benchmark::State& state) {
  TildeTheory partial = build_theory(2, {1});
  std::mt19937_64 rng(11);
  auto symbols = kvn::Expr(Symbol::position(1)).symbols();
  std::vector<Expr> u, v;
  std::vector<Symbol> pool = {Symbol::position(1), Symbol::momentum(1),
                              Symbol::tilde_position(1), Symbol::tilde_momentum(1),
                              Symbol::position(2), Symbol::momentum(2)};
  for (int i = 0; i < 64; ++i) {
    u.push_back(random_poly(rng, pool, 3, 3));
    v.push_back(random_poly(rng, pool, 3, 3));
  }
  size_t at = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        dbracket(u[at % 64], v[at % 64], partial.table()));
    ++at;
  }
}
BENCHMARK(bm_dbracket);

void bm_mccoy(benchmark::State& state) {
  std::mt19937_64 rng(13);
  std::vector<Symbol> pool = {Symbol::position(1), Symbol::momentum(1)};
  std::vector<Expr> u, v;
  for (int i = 0; i < 64; ++i) {
    u.push_back(random_poly(rng, pool, 3, 4));
    v.push_back(random_poly(rng, pool, 3, 4));
  }
  size_t at = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mccoy_bracket(u[at % 64], v[at % 64]));
    ++at;
  }
}
BENCHMARK(bm_mccoy);

void bm_tilde_hamiltonian(benchmark::State& state) {
  TildeTheory partial = build_theory(2, {1});
  std::mt19937_64 rng(17);
  std::vector<Expr> h;
  for (int i = 0; i < 64; ++i)
    h.push_back(random_poly(rng, symbols2(), 4, 4));
  size_t at = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        tilde_hamiltonian(h[at % 64], partial, Expr::zero()));
    ++at;
  }
}
BENCHMARK(bm_tilde_hamiltonian);

}  // namespace

BENCHMARK_MAIN();
