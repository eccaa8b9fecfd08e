#pragma once

#include <complex>
#include <vector>

#include "kvn/expr.hpp"

namespace kvn {

// One periodic grid axis bound to a phase-space symbol.
struct Axis {
  Symbol symbol;
  double lo = 0.0;
  double hi = 0.0;
  int points = 0;

  double spacing() const { return (hi - lo) / points; }
  double coordinate(int index) const { return lo + index * spacing(); }
  // Fourier wavenumber in FFT ordering: 0, 1, ..., N/2-1, -N/2, ..., -1
  // times 2 pi / L.
  double wavenumber(int index) const;
};

// Row-major tensor grid (axis 0 slowest). Points per axis must be a power
// of two and the total must fit the point budget.
class PhaseGrid {
 public:
  static constexpr long kDefaultBudget = 1L << 22;

  PhaseGrid() = default;
  explicit PhaseGrid(std::vector<Axis> axes, long budget = kDefaultBudget);

  const std::vector<Axis>& axes() const { return axes_; }
  int rank() const { return static_cast<int>(axes_.size()); }
  long total_points() const { return total_; }
  long stride(int axis) const { return strides_[axis]; }
  double cell_volume() const { return cell_volume_; }
  int axis_of(const Symbol& s) const;  // -1 when absent

 private:
  std::vector<Axis> axes_;
  std::vector<long> strides_;
  long total_ = 0;
  double cell_volume_ = 1.0;
};

using Field = std::vector<std::complex<double>>;

// Normalized complex amplitude over a grid with a concrete hbar value.
struct StateVector {
  PhaseGrid grid;
  double hbar = 1.0;
  Field amplitude;

  double norm() const;
  void normalize();
};

// Per-axis Gaussian factor: exp(-(x-center)^2/(4 sigma^2) + i pgrad x),
// so the coordinate uncertainty is sigma and the phase gradient is pgrad
// radians per unit coordinate. Data must sit at least 6 sigma away from
// the periodic boundary.
struct GaussianAxis {
  double center = 0.0;
  double sigma = 1.0;
  double pgrad = 0.0;
};

StateVector make_gaussian(const PhaseGrid& grid,
                          const std::vector<GaussianAxis>& spec, double hbar);

}  // namespace kvn
