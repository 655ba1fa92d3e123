// SPDX-License-Identifier: Apache-2.0
#include "passnet/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "passnet/errors.hpp"

namespace passnet {

Eigen::VectorXd Signal::operator()(double t) const {
  switch (kind) {
    case Kind::kConstant:
      return value;
    case Kind::kPiecewiseConstant: {
      auto it = std::upper_bound(times.begin(), times.end(), t);
      const std::size_t k = it == times.begin() ? 0 : std::size_t(it - times.begin()) - 1;
      return values[k];
    }
    case Kind::kExponential:
      return value * std::exp(rate * t);
    case Kind::kSinusoid:
      return value * std::sin(rate * t + phase);
  }
  return value;
}

int Signal::size() const {
  return kind == Kind::kPiecewiseConstant ? static_cast<int>(values.front().size())
                                          : static_cast<int>(value.size());
}

Signal Signal::constant(Eigen::VectorXd v) {
  Signal s;
  s.value = std::move(v);
  return s;
}

Signal Signal::piecewise_constant(std::vector<double> times, std::vector<Eigen::VectorXd> values) {
  if (times.empty() || times.size() != values.size() || !std::is_sorted(times.begin(), times.end()))
    throw Error(ErrorKind::kInvalidArgument, "piecewise signal needs sorted times matching values");
  Signal s;
  s.kind = Kind::kPiecewiseConstant;
  s.times = std::move(times);
  s.values = std::move(values);
  return s;
}

Signal Signal::exponential(Eigen::VectorXd amplitude, double rate) {
  Signal s;
  s.kind = Kind::kExponential;
  s.value = std::move(amplitude);
  s.rate = rate;
  return s;
}

Signal Signal::sinusoid(Eigen::VectorXd amplitude, double omega, double phase) {
  Signal s;
  s.kind = Kind::kSinusoid;
  s.value = std::move(amplitude);
  s.rate = omega;
  s.phase = phase;
  return s;
}

SimulationResult simulate(const StateSpace& ss, const Eigen::VectorXd& x0, const Signal& input, double t0,
                          double t1, double dt, const DissipationFactor* factor) {
  validate(ss);
  if (!(dt > 0) || !(t1 > t0)) throw Error(ErrorKind::kInvalidArgument, "need dt > 0 and t1 > t0");
  const Eigen::MatrixXd A = to_eigen(ss.A), B = to_eigen(ss.B), C = to_eigen(ss.C), D = to_eigen(ss.D);
  if (x0.size() != A.rows() || input.size() != D.rows())
    throw Error(ErrorKind::kShapeMismatch, "initial state or input size mismatch");
  const long steps = std::lround(std::ceil((t1 - t0) / dt - 1e-9));
  const double h = (t1 - t0) / double(steps);
  const double inside = 1e-9 * h;

  auto rate = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    SimulationResult r;
    Eigen::VectorXd y = C * x + D * u;
    r.supplied = u.dot(y);
    if (factor) r.dissipated = 0.5 * (factor->M * x + factor->N * u).squaredNorm();
    return r;
  };

  SimulationResult out;
  Eigen::VectorXd x = x0;
  for (long k = 0; k < steps; ++k) {
    const double t = t0 + double(k) * h;
    const Eigen::VectorXd u0 = input(t + inside);
    const Eigen::VectorXd um = input(t + 0.5 * h);
    const Eigen::VectorXd u1 = input(t + h - inside);
    const SimulationResult p0 = rate(x, u0);
    Eigen::VectorXd k1 = A * x + B * u0;
    Eigen::VectorXd k2 = A * (x + 0.5 * h * k1) + B * um;
    Eigen::VectorXd k3 = A * (x + 0.5 * h * k2) + B * um;
    Eigen::VectorXd k4 = A * (x + h * k3) + B * u1;
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const SimulationResult p1 = rate(x, u1);
    out.supplied += 0.5 * h * (p0.supplied + p1.supplied);
    out.dissipated += 0.5 * h * (p0.dissipated + p1.dissipated);
  }
  out.x_final = x;
  return out;
}

double simulate_extracted_energy(const StateSpace& ss, const Eigen::VectorXd& x0, const Signal& input,
                                 double t0, double t1, double dt) {
  return -simulate(ss, x0, input, t0, t1, dt).supplied;
}

}  // namespace passnet
