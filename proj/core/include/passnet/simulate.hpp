// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <vector>

#include "passnet/statespace.hpp"

namespace passnet {

/// Deterministic input signal u(t).
struct Signal {
  enum class Kind { kConstant, kPiecewiseConstant, kExponential, kSinusoid };

  Kind kind = Kind::kConstant;
  /// Constant value, exponential/sinusoid amplitude.
  Eigen::VectorXd value;
  /// Piecewise constant: value k holds on [times[k], times[k+1]); the last one holds afterwards.
  std::vector<double> times;
  std::vector<Eigen::VectorXd> values;
  /// Exponential rate, or sinusoid angular frequency.
  double rate = 0.0;
  double phase = 0.0;

  Eigen::VectorXd operator()(double t) const;
  int size() const;

  static Signal constant(Eigen::VectorXd v);
  static Signal piecewise_constant(std::vector<double> times, std::vector<Eigen::VectorXd> values);
  static Signal exponential(Eigen::VectorXd amplitude, double rate);
  static Signal sinusoid(Eigen::VectorXd amplitude, double omega, double phase = 0.0);
};

struct SimulationResult {
  Eigen::VectorXd x_final;
  /// Integral of u^T y over [t0, t1].
  double supplied = 0.0;
  /// Integral of |M x + N u|^2 / 2 when a dissipation factor was given.
  double dissipated = 0.0;
};

/// Fixed-step RK4 for the state; trapezoidal quadrature for the integrals.
/// Inputs are sampled just inside each step so that breakpoints on the grid are exact.
SimulationResult simulate(const StateSpace& ss, const Eigen::VectorXd& x0, const Signal& input, double t0,
                          double t1, double dt, const DissipationFactor* factor = nullptr);

/// -integral of u^T y over [t0, t1].
double simulate_extracted_energy(const StateSpace& ss, const Eigen::VectorXd& x0, const Signal& input,
                                 double t0, double t1, double dt);

}  // namespace passnet
