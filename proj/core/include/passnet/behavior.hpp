// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "passnet/polymatrix.hpp"
#include "passnet/roots.hpp"
#include "passnet/statespace.hpp"

namespace passnet {

/// Port behavior P(d/dt) i = Q(d/dt) v with n ports.
struct Behavior {
  PolyMatrix P;
  PolyMatrix Q;
  std::vector<std::string> ports;

  int size() const { return P.rows(); }
  /// Kernel matrix [P, -Q] acting on w = (i, v).
  PolyMatrix R() const;
};

/// Validates shapes and normal rank. Empty labels default to p1..pn.
Behavior behavior_from_pq(PolyMatrix P, PolyMatrix Q, std::vector<std::string> labels = {});

/// R(d/dt) w = 0 with R of full normal row rank.
struct KernelRep {
  PolyMatrix R;
  std::vector<std::string> labels;
};

KernelRep make_kernel_rep(PolyMatrix R, std::vector<std::string> labels = {});
KernelRep kernel_rep(const Behavior& b);

struct Controllability {
  bool controllable = true;
  RootSet uncontrollable_modes;
};

Controllability is_controllable(const KernelRep& k);
Controllability is_controllable(const Behavior& b);

/// Roots of the minor gcd with Re > -tol count as closed right half plane.
bool is_stabilisable(const KernelRep& k, double tol = kDefaultTol);
bool is_stabilisable(const Behavior& b, double tol = kDefaultTol);

/// R = F * controllable_part.R with det F equal to the minor gcd up to a constant.
struct Decomposition {
  KernelRep controllable_part;
  RootSet autonomous_modes;
  int autonomous_dim = 0;
  PolyMatrix F;
};

Decomposition decompose(const KernelRep& k);
Decomposition decompose(const Behavior& b);

/// Input selection per port (current or voltage) and the induced
/// Q_hat(d/dt) y = P_hat(d/dt) u form.
struct IoPartition {
  std::vector<bool> current_input;
  QMatrix sigma_e;
  PolyMatrix P_hat;
  PolyMatrix Q_hat;
  std::vector<std::string> input_labels;
  std::vector<std::string> output_labels;
};

IoPartition make_io_partition(const Behavior& b, std::vector<bool> current_input);
/// True when det Q_hat != 0 and Q_hat^{-1} P_hat is proper.
bool is_proper(const IoPartition& part);
/// Exhaustive search: all currents first, then by number of voltage inputs,
/// lexicographic (current < voltage, first port most significant) within a count.
IoPartition find_io_partition(const Behavior& b);
/// The input selections (true = current input) in the search order above.
std::vector<std::vector<bool>> partition_search_order(int ports);

/// Observer-form realization of Q_hat^{-1} P_hat; always observable.
StateSpace to_observable_iso(const Behavior& b, const IoPartition& part);

/// First `count` Markov parameters of Q_hat^{-1} P_hat (G_0 = direct feedthrough).
std::vector<QMatrix> markov_parameters(const PolyMatrix& Q_hat, const PolyMatrix& P_hat, int count);

/// Adjugate of a square polynomial matrix.
PolyMatrix adjugate(const PolyMatrix& m);

}  // namespace passnet
