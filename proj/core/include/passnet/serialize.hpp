// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <string>
#include <string_view>

#include "passnet/behavior.hpp"
#include "passnet/circuits.hpp"
#include "passnet/dissipativity.hpp"
#include "passnet/simulate.hpp"
#include "passnet/statespace.hpp"

namespace passnet {

// Every to_json returns compact JSON text. Exact values are written as strings
// ("3/4", "1/2 - s + s^2"); floating values as JSON numbers.

std::string to_json(const PolyMatrix& m);
std::string to_json(const QMatrix& m);
std::string to_json(const Behavior& b);
std::string to_json(const KernelRep& k);
std::string to_json(const AssembledEquations& eq);
std::string to_json(const StateSpace& ss);
std::string to_json(const RootSet& r);
std::string to_json(const Controllability& c);
std::string to_json(const PassivityReport& r);
std::string to_json(const InertiaBounds& b);
std::string to_json(const Bezoutian& b);
std::string to_json(const StorageCertificate& c);
std::string to_json(const SpectralCheck& c);

/// {"P": [[...]], "Q": [[...]], "ports": [...]}; entries are polynomial strings or numbers.
Behavior behavior_from_json(std::string_view text);
/// {"A", "B", "C", "D"} plus optional "sigma_i", "sigma_e"; entries rational strings or numbers.
StateSpace state_space_from_json(std::string_view text);

/// Input signal, initial state and time grid for a simulation run.
struct SimulationSpec {
  Signal input;
  Eigen::VectorXd x0;
  double t0 = 0.0;
  double t1 = 1.0;
  double dt = 1e-3;
};

/// {"signal": {"kind": "constant" | "piecewise_constant" | "exponential" | "sinusoid",
///             "value": [...], "times": [...], "values": [[...]], "rate": r, "phase": p},
///  "x0": [...], "t0": 0, "t1": 1, "dt": 0.001}
SimulationSpec simulation_spec_from_json(std::string_view text, int ports, int states);

}  // namespace passnet
