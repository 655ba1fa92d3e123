// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

#include "passnet/matrix.hpp"

namespace passnet {

/// dx/dt = A x + B u, y = C x + D u with u, y of equal size.
struct StateSpace {
  QMatrix A;
  QMatrix B;
  QMatrix C;
  QMatrix D;
  std::optional<QMatrix> sigma_i;
  std::optional<QMatrix> sigma_e;

  int states() const { return A.rows(); }
  int ports() const { return D.rows(); }
};

/// Throws ShapeMismatch on inconsistent shapes or non-signature sigmas.
void validate(const StateSpace& ss);
StateSpace make_state_space(QMatrix A, QMatrix B, QMatrix C, QMatrix D);

std::vector<QMatrix> markov_parameters(const StateSpace& ss, int count);
QMatrix controllability_matrix(const StateSpace& ss);
QMatrix observability_matrix(const StateSpace& ss);
bool is_observable(const StateSpace& ss);
bool is_controllable(const StateSpace& ss);

/// PBH tests at the numeric eigenvalues of A.
bool pbh_controllable(const StateSpace& ss, double tol = 1e-8);
bool pbh_observable(const StateSpace& ss, double tol = 1e-8);

enum class CertificateKind { kStabilizingAre, kLmiFeasible };

struct StorageCertificate {
  Eigen::MatrixXd X;
  CertificateKind kind = CertificateKind::kStabilizingAre;
  std::vector<std::complex<double>> closed_loop_spectrum;
  double residual = 0.0;
};

/// Stabilizing solution of X A + A^T X + (X B - C^T)(D + D^T)^{-1}(B^T X - C) = 0
/// from the stable invariant subspace of the Hamiltonian.
StorageCertificate solve_are(const StateSpace& ss);

/// Finds X >= 0 with [-A^T X - X A, C^T - X B; C - B^T X, D + D^T] >= 0.
StorageCertificate lmi_feasible(const StateSpace& ss);

/// The block matrix above evaluated at X.
Eigen::MatrixXd lmi_block(const StateSpace& ss, const Eigen::MatrixXd& X);

/// lmi_block(X) = [M N]^T [M N].
struct DissipationFactor {
  Eigen::MatrixXd M;
  Eigen::MatrixXd N;
};

DissipationFactor dissipation_factorization(const StateSpace& ss, const StorageCertificate& cert);

struct SpectralCheck {
  bool ok = false;
  double max_relative_error = 0.0;
  std::optional<std::complex<double>> offending_point;
  bool rhp_poles_hidden = true;
};

/// G(s) + G(-s)^T = Z(-s)^T Z(s) at 16 fixed points off spec(A), with Z = N + M (sI - A)^{-1} B.
SpectralCheck spectral_factor_check(const StateSpace& ss, const DissipationFactor& f);
std::vector<std::complex<double>> spectral_sample_points(const StateSpace& ss);

/// diag(sigma_i, sigma_e) [-A, -B; C, D] symmetric (exact).
bool check_internally_reciprocal(const StateSpace& ss);
/// Symmetric part of [-A, -B; C, D] positive semidefinite (exact).
bool check_internally_passive(const StateSpace& ss);

}  // namespace passnet
