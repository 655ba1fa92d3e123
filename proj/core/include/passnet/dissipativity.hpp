// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "passnet/behavior.hpp"

namespace passnet {

/// Phi(s) = P(s) Q(-s)^T + Q(s) P(-s)^T.
struct ParaHermitianPart {
  PolyMatrix phi;
};

ParaHermitianPart para_hermitian_part(const Behavior& b);

struct CheckOptions {
  double tol = kDefaultTol;
  /// When false, condition 1 is decided on the imaginary axis and at infinity only.
  bool interior_sampling = true;
};

struct Condition1Result {
  bool holds = true;
  bool interior_checked = false;
  /// Frequency where a principal minor of Phi(i w) is negative.
  std::optional<Rational> omega;
  /// Rows/columns of that principal minor.
  std::vector<int> minor_indices;
  /// Enclosing interval of negative values (may be unbounded).
  std::optional<std::pair<double, double>> omega_interval;
  /// Open right half plane sample where the Hermitian form is indefinite.
  std::optional<std::complex<double>> interior_point;
  bool infinity_failed = false;
};

struct Condition2Result {
  bool holds = true;
  std::optional<std::complex<double>> witness;
};

struct Condition3Result {
  bool holds = true;
  std::optional<std::complex<double>> lambda;
  /// Nonzero p(lambda) in both the syzygy rowspan and the left kernel.
  Eigen::VectorXcd p;
};

struct PassivityReport {
  bool verdict = false;
  Condition1Result cond1;
  Condition2Result cond2;
  Condition3Result cond3;
  std::vector<std::string> warnings;
};

Condition1Result check_condition1(const Behavior& b, const CheckOptions& opts = {});
Condition2Result check_condition2(const Behavior& b, double tol = kDefaultTol);
Condition3Result check_condition3(const Behavior& b);
PassivityReport is_passive(const Behavior& b, const CheckOptions& opts = {});

/// Behavior P u = Q y with G = Q^-1 P; gamma^2 Q Q~ - P P~ takes the place of Phi in conditions 1 and 3.
PassivityReport bounded_real_check(const PolyMatrix& P, const PolyMatrix& Q, const Rational& gamma,
                                   const CheckOptions& opts = {});

bool is_reciprocal(const Behavior& b);
bool is_lossless(const Behavior& b, const CheckOptions& opts = {});
bool is_reversible(const Behavior& b, const CheckOptions& opts = {});
bool is_relaxation(const Behavior& b, const CheckOptions& opts = {});
bool is_rl_dual(const Behavior& b, const CheckOptions& opts = {});

/// Block matrix of (Q(z)P(w)^T - P(z)Q(w)^T)/(z - w); block (i, j) multiplies z^i w^j.
struct Bezoutian {
  QMatrix entries;
  int degree = 0;
  int ports = 0;
};

/// Throws NotReciprocal when P Q^T is not symmetric (the quotient is not polynomial).
Bezoutian bezoutian(const Behavior& b);

struct InertiaBounds {
  int pos_eigs = 0;
  int neg_eigs = 0;
  int uncontrollable_modes = 0;
  int even_parity_lower = 0;
  int odd_parity_lower = 0;
  int capacitor_lower = 0;
  int inductor_lower = 0;
};

InertiaBounds inertia_bounds(const Behavior& b);

/// Interior sample points used by condition 1.
std::vector<std::complex<double>> rhp_sample_points();

}  // namespace passnet
