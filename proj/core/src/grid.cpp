#include "kvn/grid.hpp"

#include <cmath>
#include <numbers>

#include "kvn/errors.hpp"

namespace kvn {

double Axis::wavenumber(int index) const {
  const double dk = 2.0 * std::numbers::pi / (hi - lo);
  int k = index < points / 2 ? index : index - points;
  return dk * k;
}

PhaseGrid::PhaseGrid(std::vector<Axis> axes, long budget) : axes_(std::move(axes)) {
  if (axes_.empty()) throw TheoryError("grid needs at least one axis");
  if (axes_.size() > 3) throw TheoryError("grids beyond 3 axes are out of scope");
  total_ = 1;
  for (const auto& a : axes_) {
    if (a.points < 2 || (a.points & (a.points - 1)) != 0)
      throw TheoryError("axis points must be a power of two");
    if (!(a.hi > a.lo)) throw TheoryError("axis domain is empty");
    total_ *= a.points;
    cell_volume_ *= a.spacing();
  }
  if (total_ > budget) throw TheoryError("grid exceeds the point budget");
  strides_.assign(axes_.size(), 1);
  for (int a = static_cast<int>(axes_.size()) - 2; a >= 0; --a)
    strides_[a] = strides_[a + 1] * axes_[a + 1].points;
}

int PhaseGrid::axis_of(const Symbol& s) const {
  for (size_t a = 0; a < axes_.size(); ++a)
    if (axes_[a].symbol == s) return static_cast<int>(a);
  return -1;
}

double StateVector::norm() const {
  long double acc = 0.0L;
  for (const auto& z : amplitude) acc += std::norm(z);
  return std::sqrt(static_cast<double>(acc) * grid.cell_volume());
}

void StateVector::normalize() {
  double n = norm();
  if (n == 0.0) throw NumericError("cannot normalize the zero state");
  for (auto& z : amplitude) z /= n;
}

StateVector make_gaussian(const PhaseGrid& grid,
                          const std::vector<GaussianAxis>& spec, double hbar) {
  if (spec.size() != static_cast<size_t>(grid.rank()))
    throw TheoryError("one Gaussian factor per grid axis required");
  for (int a = 0; a < grid.rank(); ++a) {
    const Axis& ax = grid.axes()[a];
    const GaussianAxis& g = spec[a];
    if (g.sigma <= 0) throw TheoryError("sigma must be positive");
    if (g.center - 6 * g.sigma < ax.lo || g.center + 6 * g.sigma > ax.hi)
      throw TheoryError("Gaussian data must stay 6 sigma away from the boundary");
  }

  StateVector state;
  state.grid = grid;
  state.hbar = hbar;
  state.amplitude.assign(grid.total_points(), {1.0, 0.0});
  for (int a = 0; a < grid.rank(); ++a) {
    const Axis& ax = grid.axes()[a];
    const GaussianAxis& g = spec[a];
    std::vector<std::complex<double>> line(ax.points);
    for (int i = 0; i < ax.points; ++i) {
      double x = ax.coordinate(i);
      double env = std::exp(-(x - g.center) * (x - g.center) / (4 * g.sigma * g.sigma));
      line[i] = std::polar(env, g.pgrad * x);
    }
    const long stride = grid.stride(a);
    const long n = grid.total_points();
    for (long idx = 0; idx < n; ++idx)
      state.amplitude[idx] *= line[(idx / stride) % ax.points];
  }
  state.normalize();
  return state;
}

}  // namespace kvn
