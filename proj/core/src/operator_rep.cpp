#include "kvn/operator_rep.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace kvn {

std::complex<double> inner_product(const PhaseGrid& grid, const Field& a,
                                   const Field& b) {
  std::complex<long double> acc{0.0L, 0.0L};
  const long n = grid.total_points();
  for (long i = 0; i < n; ++i) {
    std::complex<double> t = std::conj(a[i]) * b[i];
    acc += std::complex<long double>(t.real(), t.imag());
  }
  return {static_cast<double>(acc.real() * grid.cell_volume()),
          static_cast<double>(acc.imag() * grid.cell_volume())};
}

GridRep::GridRep(TildeTheory theory, PhaseGrid grid, double hbar,
                 std::map<std::string, double> parameter_values)
    : theory_(std::move(theory)),
      grid_(std::move(grid)),
      hbar_(hbar),
      params_(std::move(parameter_values)) {
  const std::complex<double> i_unit{0.0, 1.0};
  for (int d = 1; d <= theory_.dof_count(); ++d) {
    const Symbol q = Symbol::position(d);
    const Symbol p = Symbol::momentum(d);
    int qa = grid_.axis_of(q);
    int pa = grid_.axis_of(p);
    if (theory_.deconjugated(d)) {
      if (qa < 0 || pa < 0)
        throw TheoryError("deconjugated dof needs q and p axes on the grid");
      actions_[q] = {SymbolAction::Diagonal, qa, 1.0};
      actions_[p] = {SymbolAction::Diagonal, pa, 1.0};
      actions_[Symbol::tilde_momentum(d)] = {SymbolAction::Spectral, qa,
                                             -i_unit * hbar_};
      actions_[Symbol::tilde_position(d)] = {SymbolAction::Spectral, pa,
                                             i_unit * hbar_};
    } else {
      if (qa < 0 || pa >= 0)
        throw TheoryError("canonical dof needs exactly a q axis on the grid");
      actions_[q] = {SymbolAction::Diagonal, qa, 1.0};
      actions_[p] = {SymbolAction::Spectral, qa, -i_unit * hbar_};
    }
  }
  for (int a = 0; a < grid_.rank(); ++a) {
    const Symbol& s = grid_.axes()[a].symbol;
    if (actions_.find(s) == actions_.end())
      throw TheoryError("grid axis not used by the theory");
  }

  const long total = grid_.total_points();
  coord_full_.resize(grid_.rank());
  wave_full_.resize(grid_.rank());
  for (int a = 0; a < grid_.rank(); ++a) {
    const Axis& ax = grid_.axes()[a];
    coord_full_[a].resize(total);
    wave_full_[a].resize(total);
    const long stride = grid_.stride(a);
    for (long i = 0; i < total; ++i) {
      int idx = static_cast<int>((i / stride) % ax.points);
      coord_full_[a][i] = ax.coordinate(idx);
      wave_full_[a][i] = ax.wavenumber(idx);
    }
  }
  fft_ = std::make_unique<FftEngine>(grid_);
}

GridRep build_representation(const TildeTheory& theory, const PhaseGrid& grid,
                             double hbar,
                             std::map<std::string, double> parameter_values) {
  return GridRep(theory, grid, hbar, std::move(parameter_values));
}

const SymbolAction& GridRep::action(const Symbol& s) const {
  auto it = actions_.find(s);
  if (it == actions_.end())
    throw TheoryError("symbol " + s.default_name(true) +
                      " has no grid representation");
  return it->second;
}

std::complex<double> GridRep::coefficient_value(const Term& t) const {
  std::complex<double> c = t.coeff.evaluate(hbar_);
  for (const auto& [sym, pow] : t.params) {
    auto it = params_.find(sym.parameter_name());
    if (it == params_.end())
      throw TheoryError("parameter " + sym.parameter_name() + " has no value");
    c *= std::pow(it->second, pow);
  }
  return c;
}

void GridRep::apply_term(const Term& t, Field& tmp) {
  const long total = grid_.total_points();
  // Factors act right to left. A maximal run of diagonal factors becomes a
  // single pointwise pass with the per-axis powers multiplied in ascending
  // axis order, so algebraically equal diagonal products apply identically
  // (and [q, p] vanishes exactly). Runs of one spectral symbol share one
  // transform round trip with the multiplier taken to the run's power.
  long i = static_cast<long>(t.ops.size()) - 1;
  while (i >= 0) {
    const SymbolAction& act = action(t.ops[i]);
    if (act.kind == SymbolAction::Diagonal) {
      std::vector<int> axis_power(grid_.rank(), 0);
      long j = i;
      while (j >= 0) {
        const SymbolAction& a = action(t.ops[j]);
        if (a.kind != SymbolAction::Diagonal) break;
        ++axis_power[a.axis];
        --j;
      }
      std::vector<std::pair<const double*, int>> factors;
      for (int a = 0; a < grid_.rank(); ++a)
        if (axis_power[a] > 0) factors.push_back({coord_full_[a].data(), axis_power[a]});
#ifdef KVN_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(worker_threads())
#endif
      for (long k = 0; k < total; ++k) {
        double f = 1.0;
        for (const auto& [coord, power] : factors)
          for (int n = 0; n < power; ++n) f *= coord[k];
        tmp[k] *= f;
      }
      i = j;
    } else {
      const Symbol& s = t.ops[i];
      long j = i;
      while (j >= 1 && t.ops[j - 1] == s) --j;
      const int count = static_cast<int>(i - j + 1);
      fft_->forward(act.axis, tmp);
      const double* wave = wave_full_[act.axis].data();
      const std::complex<double> pref = act.prefactor;
#ifdef KVN_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(worker_threads())
#endif
      for (long k = 0; k < total; ++k) {
        std::complex<double> z = pref * std::complex<double>(0.0, wave[k]);
        std::complex<double> f = z;
        for (int n = 1; n < count; ++n) f *= z;
        tmp[k] *= f;
      }
      fft_->backward(act.axis, tmp);
      i = j - 1;
    }
  }
}

void GridRep::apply(const Expr& op, const Field& in, Field& out) {
  const long total = grid_.total_points();
  if (static_cast<long>(in.size()) != total)
    throw NumericError("field size does not match the grid");
  out.assign(total, {0.0, 0.0});
  for (const auto& t : op.terms()) {
    const std::complex<double> c = coefficient_value(t);
    scratch_ = in;
    apply_term(t, scratch_);
#ifdef KVN_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(worker_threads())
#endif
    for (long k = 0; k < total; ++k) out[k] += c * scratch_[k];
  }
}

std::complex<double> GridRep::expectation(const StateVector& state, const Expr& op) {
  Field applied;
  apply(op, state.amplitude, applied);
  return inner_product(grid_, state.amplitude, applied);
}

double GridRep::uncertainty(const StateVector& state, const Symbol& s) {
  Field applied;
  apply(Expr(s), state.amplitude, applied);
  double mean = inner_product(grid_, state.amplitude, applied).real();
  double second = inner_product(grid_, applied, applied).real();
  return std::sqrt(std::max(0.0, second - mean * mean));
}

double GridRep::commutator_residual(const StateVector& probe, const Symbol& a,
                                    const Symbol& b) {
  Expr ab = Expr(a) * Expr(b) - Expr(b) * Expr(a);
  Field applied;
  apply(ab, probe.amplitude, applied);
  const std::complex<double> expected =
      theory_.table().commutator(a, b).evaluate(hbar_);
  long double acc = 0.0L;
  for (long i = 0; i < grid_.total_points(); ++i)
    acc += std::norm(applied[i] - expected * probe.amplitude[i]);
  long double ref = 0.0L;
  for (const auto& z : probe.amplitude) ref += std::norm(z);
  return std::sqrt(static_cast<double>(acc / ref));
}

double GridRep::generator_norm_estimate(const Expr& op, int iters) {
  std::mt19937_64 rng(0x6b766e6e6f726dULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Field v(grid_.total_points());
  for (auto& z : v) z = {u(rng), u(rng)};
  Field w;
  double norm_ratio = 0.0;
  for (int it = 0; it < iters; ++it) {
    long double n2 = 0.0L;
    for (const auto& z : v) n2 += std::norm(z);
    double n = std::sqrt(static_cast<double>(n2));
    for (auto& z : v) z /= n;
    apply(op, v, w);
    long double w2 = 0.0L;
    for (const auto& z : w) w2 += std::norm(z);
    norm_ratio = std::sqrt(static_cast<double>(w2));
    std::swap(v, w);
  }
  return norm_ratio / hbar_;
}

}  // namespace kvn
