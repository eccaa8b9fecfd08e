#include "kvn/evolve.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace kvn {

int TrajectoryRecord::column(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  throw Error("no trajectory column named '" + name + "'");
}

std::vector<double> TrajectoryRecord::series(const std::string& name) const {
  int c = column(name);
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& row : samples) out.push_back(row[c]);
  return out;
}

namespace {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string TrajectoryRecord::to_csv() const {
  std::string out = "t";
  for (const auto& c : columns) out += "," + c;
  out += "\n";
  for (size_t i = 0; i < samples.size(); ++i) {
    out += format_g17(times[i]);
    for (double v : samples[i]) out += "," + format_g17(v);
    out += "\n";
  }
  return out;
}

std::string TrajectoryRecord::to_plot_data() const {
  std::string out = "# t";
  for (const auto& c : columns) out += " " + c;
  out += "\n";
  for (size_t i = 0; i < samples.size(); ++i) {
    out += format_g17(times[i]);
    for (double v : samples[i]) out += " " + format_g17(v);
    out += "\n";
  }
  return out;
}

namespace {

class Recorder {
 public:
  Recorder(GridRep& rep, const Expr& H_tilde, const std::vector<Observable>& obs)
      : rep_(rep), observables_(obs) {
    for (const auto& o : observables_)
      if (o.kind == Observable::BracketRhs)
        rhs_exprs_.push_back(dbracket(o.expr, H_tilde, rep.theory().table()));
      else
        rhs_exprs_.push_back(Expr::zero());
  }

  std::vector<double> sample(const StateVector& state) {
    std::vector<double> row;
    row.reserve(observables_.size() + 1);
    row.push_back(state.norm());
    for (size_t i = 0; i < observables_.size(); ++i) {
      const Observable& o = observables_[i];
      switch (o.kind) {
        case Observable::Expectation:
          row.push_back(rep_.expectation(state, o.expr).real());
          break;
        case Observable::Uncertainty:
          row.push_back(rep_.uncertainty(state, o.symbol));
          break;
        case Observable::BracketRhs:
          row.push_back(rep_.expectation(state, rhs_exprs_[i]).real());
          break;
      }
    }
    return row;
  }

 private:
  GridRep& rep_;
  const std::vector<Observable>& observables_;
  std::vector<Expr> rhs_exprs_;
};

}  // namespace

TrajectoryRecord evolve(StateVector& state, const Expr& H_tilde, GridRep& rep,
                        const EvolveOptions& options) {
  if (options.steps < 0) throw NumericError("negative step count");
  const long n = rep.grid().total_points();
  if (static_cast<long>(state.amplitude.size()) != n)
    throw NumericError("state does not match the grid");

  TrajectoryRecord traj;
  traj.dt = options.dt;
  traj.columns.push_back("norm");
  for (const auto& o : options.observables) traj.columns.push_back(o.name);

  Recorder recorder(rep, H_tilde, options.observables);
  traj.times.push_back(0.0);
  traj.samples.push_back(recorder.sample(state));

  const std::complex<double> minus_i_over_hbar{0.0, -1.0 / rep.hbar()};
  Field k1, k2, k3, k4, tmp(n);

  auto rhs = [&](const Field& in, Field& out) {
    rep.apply(H_tilde, in, out);
    for (long i = 0; i < n; ++i) out[i] *= minus_i_over_hbar;
  };

  const double dt = options.dt;
  for (long step = 1; step <= options.steps; ++step) {
    Field& psi = state.amplitude;
    rhs(psi, k1);
    for (long i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * dt * k1[i];
    rhs(tmp, k2);
    for (long i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * dt * k2[i];
    rhs(tmp, k3);
    for (long i = 0; i < n; ++i) tmp[i] = psi[i] + dt * k3[i];
    rhs(tmp, k4);
    for (long i = 0; i < n; ++i)
      psi[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    traj.times.push_back(step * dt);
    traj.samples.push_back(recorder.sample(state));
    double drift = std::abs(traj.samples.back()[0] - 1.0);
    traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
    if (drift > options.norm_abort)
      throw NumericError("norm drift " + std::to_string(drift) + " at t=" +
                         std::to_string(step * dt) +
                         " exceeds the stability envelope");
  }
  return traj;
}

double ehrenfest_residual(const TrajectoryRecord& traj,
                          const std::string& value_column,
                          const std::string& rhs_column) {
  std::vector<double> value = traj.series(value_column);
  std::vector<double> rhs = traj.series(rhs_column);
  double worst = 0.0;
  for (size_t i = 1; i + 1 < value.size(); ++i) {
    double derivative = (value[i + 1] - value[i - 1]) / (2.0 * traj.dt);
    worst = std::max(worst, std::abs(derivative - rhs[i]));
  }
  return worst;
}

double stable_dt(GridRep& rep, const Expr& H_tilde) {
  double norm = rep.generator_norm_estimate(H_tilde, 8);
  if (norm <= 0.0) throw NumericError("degenerate generator norm estimate");
  return 0.5 / norm;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
}

}  // namespace kvn
