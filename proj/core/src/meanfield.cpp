#include "kvn/meanfield.hpp"

#include <cmath>

namespace kvn {

namespace {

double poly_eval(const std::vector<PolyTerm>& terms, double q1, double q2,
                 bool d_q1) {
  double acc = 0.0;
  for (const auto& t : terms) {
    if (d_q1 && t.a == 0) continue;
    double v = t.c;
    int a = d_q1 ? t.a - 1 : t.a;
    if (d_q1) v *= t.a;
    for (int k = 0; k < a; ++k) v *= q1;
    for (int k = 0; k < t.b; ++k) v *= q2;
    acc += v;
  }
  return acc;
}

}  // namespace

TrajectoryRecord meanfield_reference(const MeanFieldConfig& config) {
  PhaseGrid grid({config.q2_axis});
  const int n = config.q2_axis.points;
  const double dx = config.q2_axis.spacing();
  const double hbar = config.hbar;

  StateVector psi0 = make_gaussian(grid, {config.q2_state}, hbar);
  FftEngine fft(grid);

  std::vector<double> x(n), ksq(n), k1v(n);
  for (int i = 0; i < n; ++i) {
    x[i] = config.q2_axis.coordinate(i);
    double k = config.q2_axis.wavenumber(i);
    ksq[i] = k * k;
    k1v[i] = k;
  }

  struct Joint {
    Field psi;
    double q1, p1;
  };
  Joint y{psi0.amplitude, config.q1_0, config.p1_0};

  const std::complex<double> minus_i_over_hbar{0.0, -1.0 / hbar};

  auto rhs = [&](const Joint& in, Joint& out) {
    // H psi = c2 (hbar k)^2 psi_k + V(q1, x) psi
    out.psi = in.psi;
    fft.forward(0, out.psi);
    for (int i = 0; i < n; ++i)
      out.psi[i] *= config.kinetic_coeff2 * hbar * hbar * ksq[i];
    fft.backward(0, out.psi);
    double norm2 = 0.0;
    double mean_force = 0.0;
    for (int i = 0; i < n; ++i) {
      double v = poly_eval(config.potential, in.q1, x[i], false);
      out.psi[i] += v * in.psi[i];
      double density = std::norm(in.psi[i]);
      norm2 += density;
      mean_force += density * poly_eval(config.potential, in.q1, x[i], true);
    }
    for (int i = 0; i < n; ++i) out.psi[i] *= minus_i_over_hbar;
    out.q1 = in.p1 / config.m1;
    out.p1 = -mean_force / norm2;
  };

  auto observe = [&](const Joint& s, double t, TrajectoryRecord& traj) {
    double norm2 = 0.0, eq = 0.0;
    for (int i = 0; i < n; ++i) {
      double d = std::norm(s.psi[i]);
      norm2 += d;
      eq += d * x[i];
    }
    Field dpsi = s.psi;
    fft.forward(0, dpsi);
    for (int i = 0; i < n; ++i) dpsi[i] *= std::complex<double>(0.0, k1v[i]);
    fft.backward(0, dpsi);
    std::complex<double> ep{0.0, 0.0};
    for (int i = 0; i < n; ++i) ep += std::conj(s.psi[i]) * (-hbar) *
                                      std::complex<double>(0.0, 1.0) * dpsi[i];
    traj.times.push_back(t);
    traj.samples.push_back({std::sqrt(norm2 * dx), s.q1, s.p1, eq / norm2,
                            ep.real() / norm2});
  };

  TrajectoryRecord traj;
  traj.dt = config.dt;
  traj.columns = {"norm", "q_1", "p_1", "E[q_2]", "E[p_2]"};
  observe(y, 0.0, traj);

  Joint k1{Field(n), 0, 0}, k2 = k1, k3 = k1, k4 = k1, tmp = k1;
  const double dt = config.dt;
  auto axpy = [&](const Joint& base, double s, const Joint& slope, Joint& out) {
    out.psi.resize(n);
    for (int i = 0; i < n; ++i) out.psi[i] = base.psi[i] + s * slope.psi[i];
    out.q1 = base.q1 + s * slope.q1;
    out.p1 = base.p1 + s * slope.p1;
  };

  for (long step = 1; step <= config.steps; ++step) {
    rhs(y, k1);
    axpy(y, 0.5 * dt, k1, tmp);
    rhs(tmp, k2);
    axpy(y, 0.5 * dt, k2, tmp);
    rhs(tmp, k3);
    axpy(y, dt, k3, tmp);
    rhs(tmp, k4);
    for (int i = 0; i < n; ++i)
      y.psi[i] += (dt / 6.0) * (k1.psi[i] + 2.0 * k2.psi[i] + 2.0 * k3.psi[i] +
                                k4.psi[i]);
    y.q1 += (dt / 6.0) * (k1.q1 + 2 * k2.q1 + 2 * k3.q1 + k4.q1);
    y.p1 += (dt / 6.0) * (k1.p1 + 2 * k2.p1 + 2 * k3.p1 + k4.p1);
    observe(y, step * dt, traj);
  }
  return traj;
}

}  // namespace kvn
