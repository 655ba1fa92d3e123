// SPDX-License-Identifier: Apache-2.0
#include "passnet/statespace.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "passnet/behavior.hpp"
#include "passnet/roots.hpp"

namespace passnet {

namespace {

using Eigen::MatrixXd;
using Eigen::MatrixXcd;
using cd = std::complex<double>;

bool is_signature(const QMatrix& s, int n) {
  if (s.rows() != n || s.cols() != n) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && !is_zero(s(i, j))) return false;
      if (i == j && s(i, i) != 1 && s(i, i) != -1) return false;
    }
  return true;
}

double max_abs(const MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

struct Numeric {
  MatrixXd A, B, C, D;
};

Numeric numeric(const StateSpace& ss) {
  return {to_eigen(ss.A), to_eigen(ss.B), to_eigen(ss.C), to_eigen(ss.D)};
}

double min_eig(const MatrixXd& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

MatrixXd are_residual(const Numeric& s, const MatrixXd& Rinv, const MatrixXd& X) {
  MatrixXd K = X * s.B - s.C.transpose();
  return X * s.A + s.A.transpose() * X + K * Rinv * K.transpose();
}

double relative_residual(const Numeric& s, const MatrixXd& Rinv, const MatrixXd& X) {
  MatrixXd K = X * s.B - s.C.transpose();
  const double scale = std::max({1.0, max_abs(X * s.A), max_abs(K * Rinv * K.transpose())});
  return max_abs(are_residual(s, Rinv, X)) / scale;
}

/// Reorders a complex Schur form so that eigenvalues appear by increasing real part.
void order_schur(MatrixXcd& T, MatrixXcd& U) {
  const Eigen::Index N = T.rows();
  for (Eigen::Index i = 0; i + 1 < N; ++i)
    for (Eigen::Index k = N - 2; k >= i; --k) {
      if (T(k + 1, k + 1).real() >= T(k, k).real()) continue;
      // Unitary rotation moving the eigenvector of T(k+1,k+1) into position k.
      cd x0 = T(k, k + 1);
      cd x1 = T(k + 1, k + 1) - T(k, k);
      const double nrm = std::hypot(std::abs(x0), std::abs(x1));
      if (nrm == 0.0) continue;
      x0 /= nrm;
      x1 /= nrm;
      Eigen::Matrix2cd G;
      G << x0, -std::conj(x1), x1, std::conj(x0);
      T.middleRows(k, 2) = (G.adjoint() * T.middleRows(k, 2)).eval();
      T.middleCols(k, 2) = (T.middleCols(k, 2) * G).eval();
      U.middleCols(k, 2) = (U.middleCols(k, 2) * G).eval();
      T(k + 1, k) = 0.0;
    }
}

/// Kronecker solve of A_cl^T D + D A_cl = -Res for one Newton step.
bool newton_step(const Numeric& s, const MatrixXd& Rinv, MatrixXd& X) {
  const Eigen::Index n = X.rows();
  MatrixXd Acl = s.A + s.B * Rinv * (s.B.transpose() * X - s.C);
  MatrixXd I = MatrixXd::Identity(n, n);
  MatrixXd L = MatrixXd::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      L.block(i * n, j * n, n, n) += Acl.transpose()(i, j) * I;
      L.block(i * n, j * n, n, n) += (i == j ? 1.0 : 0.0) * Acl.transpose();
    }
  // vec(D) in row-major block order: index i*n + j holds D(j, i).
  MatrixXd res = are_residual(s, Rinv, X);
  Eigen::VectorXd rhs(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) rhs(i * n + j) = -res(j, i);
  Eigen::FullPivLU<MatrixXd> lu(L);
  if (!lu.isInvertible()) return false;
  Eigen::VectorXd d = lu.solve(rhs);
  MatrixXd Dm(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) Dm(j, i) = d(i * n + j);
  MatrixXd next = X + 0.5 * (Dm + Dm.transpose());
  if (relative_residual(s, Rinv, next) >= relative_residual(s, Rinv, X)) return false;
  X = next;
  return true;
}

std::vector<cd> eigenvalues(const MatrixXd& m) {
  std::vector<cd> out;
  if (m.rows() == 0) return out;
  Eigen::EigenSolver<MatrixXd> es(m, false);
  for (Eigen::Index k = 0; k < m.rows(); ++k) out.push_back(es.eigenvalues()(k));
  return out;
}

int numeric_rank(const MatrixXcd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  const double thr = tol * std::max(1.0, sv(0));
  int r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > thr) ++r;
  return r;
}

bool pbh_input_defective(const MatrixXd& A, const MatrixXd& B, cd lambda, double tol) {
  const Eigen::Index n = A.rows();
  MatrixXcd m(n, n + B.cols());
  m << lambda * MatrixXcd::Identity(n, n) - A.cast<cd>(), B.cast<cd>();
  return numeric_rank(m, tol) < n;
}

}  // namespace

void validate(const StateSpace& ss) {
  const int n = ss.A.rows();
  const int m = ss.D.rows();
  if (ss.A.cols() != n || ss.B.rows() != n || ss.B.cols() != m || ss.C.rows() != m || ss.C.cols() != n ||
      ss.D.cols() != m)
    throw Error(ErrorKind::kShapeMismatch, "inconsistent (A, B, C, D) shapes");
  if (ss.sigma_i && !is_signature(*ss.sigma_i, n))
    throw Error(ErrorKind::kShapeMismatch, "sigma_i must be a diagonal +-1 matrix of state size");
  if (ss.sigma_e && !is_signature(*ss.sigma_e, m))
    throw Error(ErrorKind::kShapeMismatch, "sigma_e must be a diagonal +-1 matrix of port size");
}

StateSpace make_state_space(QMatrix A, QMatrix B, QMatrix C, QMatrix D) {
  StateSpace ss{std::move(A), std::move(B), std::move(C), std::move(D), std::nullopt, std::nullopt};
  validate(ss);
  return ss;
}

std::vector<QMatrix> markov_parameters(const StateSpace& ss, int count) {
  std::vector<QMatrix> out;
  if (count <= 0) return out;
  out.push_back(ss.D);
  QMatrix AkB = ss.B;
  for (int k = 1; k < count; ++k) {
    out.push_back(ss.C * AkB);
    AkB = ss.A * AkB;
  }
  return out;
}

QMatrix controllability_matrix(const StateSpace& ss) {
  QMatrix out(ss.states(), 0);
  QMatrix blk = ss.B;
  for (int k = 0; k < ss.states(); ++k) {
    out = hstack(out, blk);
    blk = ss.A * blk;
  }
  return out;
}

QMatrix observability_matrix(const StateSpace& ss) {
  QMatrix out(0, ss.states());
  QMatrix blk = ss.C;
  for (int k = 0; k < ss.states(); ++k) {
    out = vstack(out, blk);
    blk = blk * ss.A;
  }
  return out;
}

bool is_observable(const StateSpace& ss) { return rank(observability_matrix(ss)) == ss.states(); }
bool is_controllable(const StateSpace& ss) { return rank(controllability_matrix(ss)) == ss.states(); }

bool pbh_controllable(const StateSpace& ss, double tol) {
  Numeric s = numeric(ss);
  for (cd l : eigenvalues(s.A))
    if (pbh_input_defective(s.A, s.B, l, tol)) return false;
  return true;
}

bool pbh_observable(const StateSpace& ss, double tol) {
  Numeric s = numeric(ss);
  MatrixXd At = s.A.transpose();
  MatrixXd Ct = s.C.transpose();
  for (cd l : eigenvalues(s.A))
    if (pbh_input_defective(At, Ct, l, tol)) return false;
  return true;
}

StorageCertificate solve_are(const StateSpace& ss) {
  validate(ss);
  QMatrix Rq = ss.D + transpose(ss.D);
  if (is_zero(determinant(Rq))) throw Error(ErrorKind::kSingularDPlusDT, "D + D^T is singular");
  Numeric s = numeric(ss);
  const Eigen::Index n = s.A.rows();
  MatrixXd Rinv = to_eigen(inverse(Rq));
  StorageCertificate cert;
  cert.kind = CertificateKind::kStabilizingAre;
  if (n == 0) return cert;

  MatrixXd F = s.A - s.B * Rinv * s.C;
  MatrixXd G = s.B * Rinv * s.B.transpose();
  MatrixXd Qh = s.C.transpose() * Rinv * s.C;
  MatrixXd H(2 * n, 2 * n);
  H << F, G, -Qh, -F.transpose();
  Eigen::ComplexSchur<MatrixXcd> schur(H.cast<cd>());
  MatrixXcd T = schur.matrixT();
  MatrixXcd U = schur.matrixU();
  order_schur(T, U);
  MatrixXcd U1 = U.topLeftCorner(n, n);
  MatrixXcd U2 = U.bottomLeftCorner(n, n);
  Eigen::JacobiSVD<MatrixXcd> svd(U1);
  const auto& sv = svd.singularValues();
  if (sv(n - 1) <= 1e-10 * sv(0))
    throw Error(ErrorKind::kNoNonnegativeSolution,
                "stable invariant subspace is not a graph; no stabilizing solution");
  MatrixXd X = (U2 * U1.inverse()).real();
  X = 0.5 * (X + X.transpose()).eval();
  for (int it = 0; it < 8 && relative_residual(s, Rinv, X) > 1e-14; ++it)
    if (!newton_step(s, Rinv, X)) break;

  cert.X = X;
  cert.residual = relative_residual(s, Rinv, X);
  MatrixXd Acl = s.A + s.B * Rinv * (s.B.transpose() * X - s.C);
  cert.closed_loop_spectrum = eigenvalues(Acl);
  if (cert.residual > 1e-8)
    throw Error(ErrorKind::kNoNonnegativeSolution, "Riccati residual above 1e-8 (boundary case)");
  for (cd l : cert.closed_loop_spectrum)
    if (l.real() > 1e-8)
      throw Error(ErrorKind::kNoNonnegativeSolution, "closed loop has an eigenvalue in the open right half plane");
  if (min_eig(X) < -1e-8 * std::max(1.0, max_abs(X)))
    throw Error(ErrorKind::kNoNonnegativeSolution, "stabilizing solution is not nonnegative definite");
  return cert;
}

Eigen::MatrixXd lmi_block(const StateSpace& ss, const Eigen::MatrixXd& X) {
  Numeric s = numeric(ss);
  const Eigen::Index n = s.A.rows();
  const Eigen::Index m = s.D.rows();
  MatrixXd L(n + m, n + m);
  L.topLeftCorner(n, n) = -s.A.transpose() * X - X * s.A;
  L.topRightCorner(n, m) = s.C.transpose() - X * s.B;
  L.bottomLeftCorner(m, n) = s.C - s.B.transpose() * X;
  L.bottomRightCorner(m, m) = s.D + s.D.transpose();
  return L;
}

namespace {

/// L(X) = L0 + sum_k x_k L_k over a basis of symmetric matrices.
struct LmiAffine {
  MatrixXd L0;
  std::vector<MatrixXd> Lk;
  std::vector<std::pair<int, int>> index;
  int n = 0;

  MatrixXd X_of(const Eigen::VectorXd& x) const {
    MatrixXd X = MatrixXd::Zero(n, n);
    for (std::size_t k = 0; k < index.size(); ++k) {
      X(index[k].first, index[k].second) = x(Eigen::Index(k));
      X(index[k].second, index[k].first) = x(Eigen::Index(k));
    }
    return X;
  }
  Eigen::VectorXd x_of(const MatrixXd& X) const {
    Eigen::VectorXd x(index.size());
    for (std::size_t k = 0; k < index.size(); ++k) x(Eigen::Index(k)) = 0.5 * (X(index[k].first, index[k].second) + X(index[k].second, index[k].first));
    return x;
  }
  MatrixXd L(const Eigen::VectorXd& x) const {
    MatrixXd out = L0;
    for (std::size_t k = 0; k < Lk.size(); ++k) out += x(Eigen::Index(k)) * Lk[k];
    return out;
  }
};

LmiAffine make_affine(const StateSpace& ss) {
  LmiAffine a;
  a.n = ss.states();
  a.L0 = lmi_block(ss, MatrixXd::Zero(a.n, a.n));
  for (int i = 0; i < a.n; ++i)
    for (int j = i; j < a.n; ++j) {
      MatrixXd E = MatrixXd::Zero(a.n, a.n);
      E(i, j) = E(j, i) = 1.0;
      a.index.emplace_back(i, j);
      a.Lk.push_back(lmi_block(ss, E) - a.L0);
    }
  return a;
}

double lmi_scale(const MatrixXd& L) { return std::max(1.0, max_abs(L)); }

bool verifies(const StateSpace& ss, const MatrixXd& X) {
  if (!X.allFinite()) return false;
  if (min_eig(X) < -1e-8 * std::max(1.0, max_abs(X))) return false;
  MatrixXd L = lmi_block(ss, X);
  return min_eig(L) >= -1e-8 * lmi_scale(L);
}

/// Drives the near-null eigendirections of L(X) to exact null directions,
/// which recovers equality (lossless-like) cases from regularized solutions.
std::optional<MatrixXd> refine_equality(const StateSpace& ss, const LmiAffine& a, MatrixXd X, double tau) {
  Eigen::VectorXd x = a.x_of(X);
  for (int it = 0; it < 40; ++it) {
    MatrixXd L = a.L(x);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (L + L.transpose()));
    const double thr = tau * lmi_scale(L);
    std::vector<Eigen::Index> cols;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
      if (es.eigenvalues()(k) < thr) cols.push_back(k);
    if (cols.empty()) break;
    const Eigen::Index rows = L.rows() * Eigen::Index(cols.size());
    MatrixXd Gm(rows, a.Lk.size());
    Eigen::VectorXd h(rows);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      Eigen::VectorXd v = es.eigenvectors().col(cols[c]);
      h.segment(Eigen::Index(c) * L.rows(), L.rows()) = -a.L0 * v;
      for (std::size_t k = 0; k < a.Lk.size(); ++k)
        Gm.block(Eigen::Index(c) * L.rows(), Eigen::Index(k), L.rows(), 1) = a.Lk[k] * v;
    }
    Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(Gm);
    Eigen::VectorXd dx = cod.solve(h - Gm * x);
    x += dx;
    if (dx.norm() <= 1e-15 * std::max(1.0, x.norm())) break;
  }
  MatrixXd out = a.X_of(x);
  if (verifies(ss, out)) return out;
  return std::nullopt;
}

std::vector<Eigen::VectorXcd> numeric_kernel(const MatrixXcd& M) {
  std::vector<Eigen::VectorXcd> out;
  if (M.cols() == 0) return out;
  Eigen::JacobiSVD<MatrixXcd> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double scale = std::max(1.0, sv.size() ? sv(0) : 0.0);
  for (Eigen::Index j = 0; j < M.cols(); ++j)
    if (j >= sv.size() || sv(j) <= 1e-9 * scale) out.push_back(svd.matrixV().col(j));
  return out;
}

/// Vectors w with w^H L(X) w = 0 for every X, so L(X) w = 0 for every feasible X.
/// They come from zeros of G(iw) + G(iw)^H (infinity included) and from
/// eigenvectors of A on the imaginary axis.
std::vector<Eigen::VectorXcd> forced_null_vectors(const StateSpace& ss) {
  const int n = ss.states();
  const int m = ss.ports();
  const Numeric s = numeric(ss);
  const MatrixXcd Ac = s.A.cast<cd>();
  const MatrixXcd Bc = s.B.cast<cd>();
  std::vector<Eigen::VectorXcd> out;

  for (const auto& u : numeric_kernel((s.D + s.D.transpose()).cast<cd>())) {
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(n + m);
    w.tail(m) = u;
    out.push_back(w);
  }

  std::vector<double> axis_poles;
  Eigen::ComplexEigenSolver<MatrixXcd> ces(Ac);
  for (Eigen::Index k = 0; k < ces.eigenvalues().size(); ++k) {
    const cd l = ces.eigenvalues()(k);
    if (std::abs(l.real()) > 1e-9 * std::max(1.0, std::abs(l))) continue;
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(n + m);
    w.head(n) = ces.eigenvectors().col(k);
    out.push_back(w);
    axis_poles.push_back(l.imag());
  }

  // Psi(s) = a(-s) N(s) + a(s) N(-s)^T with G = N / a.
  PolyMatrix sIA = RatPoly::s() * PolyMatrix::identity(n) - PolyMatrix::from_constant(ss.A);
  const RatPoly a = determinant(sIA);
  const PolyMatrix N = PolyMatrix::from_constant(ss.C) * adjugate(sIA) * PolyMatrix::from_constant(ss.B) +
                       a * PolyMatrix::from_constant(ss.D);
  const RatPoly d = determinant(a.reflect() * N + a * para_conjugate(N));
  std::vector<double> omegas;
  if (d.is_zero()) {
    for (int k = 0; k < 2 * n + 2; ++k) omegas.push_back(0.37 * std::pow(1.6, k));
  } else {
    // d(i w) is real since d is even.
    std::vector<Rational> e(d.coeffs().size());
    for (int k = 0; k <= d.degree(); k += 2) e[k] = (k / 2) % 2 ? Rational(-d.coeff(k)) : d.coeff(k);
    for (const Root& r : roots_of(RatPoly(e)).roots)
      if (std::abs(r.value.imag()) <= 1e-9 * (1.0 + std::abs(r.value)) && r.value.real() >= 0)
        omegas.push_back(r.value.real());
  }
  for (double w0 : omegas) {
    if (std::any_of(axis_poles.begin(), axis_poles.end(), [&](double p) { return std::abs(p - w0) < 1e-6; }))
      continue;
    const cd z(0.0, w0);
    const MatrixXcd lift = (z * MatrixXcd::Identity(n, n) - Ac).partialPivLu().solve(Bc);
    const MatrixXcd G = s.D.cast<cd>() + s.C.cast<cd>() * lift;
    for (const auto& u : numeric_kernel(G + G.adjoint())) {
      Eigen::VectorXcd w(n + m);
      w.head(n) = lift * u;
      w.tail(m) = u;
      out.push_back(w);
    }
  }
  return out;
}

/// Affine slice {x = xp + Z y} on which every forced vector is a null vector of
/// L(x); V spans the orthogonal complement of the forced vectors.
struct Face {
  Eigen::VectorXd xp;
  MatrixXd Z;
  MatrixXd V;
};

MatrixXd orthonormal_complement(const MatrixXd& span, Eigen::Index dim) {
  if (span.cols() == 0) return MatrixXd::Identity(dim, dim);
  Eigen::JacobiSVD<MatrixXd> svd(span, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > 1e-9 * std::max(1.0, sv(0))) ++r;
  return svd.matrixU().rightCols(dim - r);
}

MatrixXd null_basis(const MatrixXd& M) {
  if (M.rows() == 0) return MatrixXd::Identity(M.cols(), M.cols());
  Eigen::JacobiSVD<MatrixXd> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > 1e-10 * std::max(1.0, sv(0))) ++r;
  return svd.matrixV().rightCols(M.cols() - r);
}

/// Least-norm move of X onto the face defined by the forced vectors W.
Face make_face(const LmiAffine& a, const std::vector<Eigen::VectorXcd>& W, const MatrixXd& X) {
  const Eigen::Index dim = a.L0.rows();
  const Eigen::Index rows = 2 * dim * Eigen::Index(W.size());
  MatrixXd Gm(rows, Eigen::Index(a.Lk.size()));
  Eigen::VectorXd h(rows);
  MatrixXd span(dim, 2 * Eigen::Index(W.size()));
  for (std::size_t c = 0; c < W.size(); ++c) {
    const Eigen::Index r0 = 2 * dim * Eigen::Index(c);
    const Eigen::VectorXcd l0 = a.L0.cast<cd>() * W[c];
    h.segment(r0, dim) = -l0.real();
    h.segment(r0 + dim, dim) = -l0.imag();
    for (std::size_t k = 0; k < a.Lk.size(); ++k) {
      const Eigen::VectorXcd lk = a.Lk[k].cast<cd>() * W[c];
      Gm.block(r0, Eigen::Index(k), dim, 1) = lk.real();
      Gm.block(r0 + dim, Eigen::Index(k), dim, 1) = lk.imag();
    }
    span.col(2 * Eigen::Index(c)) = W[c].real();
    span.col(2 * Eigen::Index(c) + 1) = W[c].imag();
  }
  Face f;
  f.xp = a.x_of(X);
  if (rows > 0) {
    Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(Gm);
    f.xp += cod.solve(h - Gm * f.xp);
  }
  f.Z = null_basis(Gm);
  f.V = orthonormal_complement(span, dim);
  return f;
}

MatrixXd clamp_eigenvalues(const MatrixXd& M, double floor) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (M + M.transpose()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(floor);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

/// Alternating projections inside the face between the affine slice and the set
/// {V^T L V >= margin, X >= 0}. The margin pushes iterates off the boundary so
/// that the final check passes with room to spare.
std::optional<MatrixXd> face_projections(const StateSpace& ss, const LmiAffine& a, const Face& f) {
  MatrixXd X = a.X_of(f.xp);
  if (verifies(ss, X)) return X;
  if (f.Z.cols() == 0) return std::nullopt;
  const Eigen::Index r = f.V.cols();
  const Eigen::Index n = a.n;
  auto stack = [&](const MatrixXd& red, const MatrixXd& Xm) {
    Eigen::VectorXd v(r * r + n * n);
    v.head(r * r) = Eigen::Map<const Eigen::VectorXd>(red.data(), red.size());
    v.tail(n * n) = Eigen::Map<const Eigen::VectorXd>(Xm.data(), Xm.size());
    return v;
  };
  const MatrixXd L0p = a.L(f.xp);
  const Eigen::VectorXd c0 = stack(f.V.transpose() * L0p * f.V, X);
  MatrixXd design(r * r + n * n, f.Z.cols());
  for (Eigen::Index j = 0; j < f.Z.cols(); ++j) {
    MatrixXd Lj = MatrixXd::Zero(L0p.rows(), L0p.cols());
    for (std::size_t k = 0; k < a.Lk.size(); ++k) Lj += f.Z(Eigen::Index(k), j) * a.Lk[k];
    design.col(j) = stack(f.V.transpose() * Lj * f.V, a.X_of(f.Z.col(j)));
  }
  Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(design);
  const double margin = 1e-6 * lmi_scale(L0p);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(f.Z.cols());
  for (int it = 1; it <= 5000; ++it) {
    const Eigen::VectorXd cur = c0 + design * y;
    const MatrixXd red = Eigen::Map<const MatrixXd>(cur.data(), r, r);
    const MatrixXd Xm = Eigen::Map<const MatrixXd>(cur.data() + r * r, n, n);
    const Eigen::VectorXd target = stack(clamp_eigenvalues(red, margin), clamp_eigenvalues(Xm, 0.0));
    y = cod.solve(target - c0);
    if (it % 10 == 0) {
      X = a.X_of(f.xp + f.Z * y);
      if (verifies(ss, X)) return X;
    }
  }
  return std::nullopt;
}

}  // namespace

StorageCertificate lmi_feasible(const StateSpace& ss) {
  validate(ss);
  const int n = ss.states();
  StorageCertificate cert;
  cert.kind = CertificateKind::kLmiFeasible;
  auto finish = [&](MatrixXd X) {
    cert.X = 0.5 * (X + X.transpose());
    cert.residual = std::max(0.0, -min_eig(lmi_block(ss, cert.X)));
    Numeric s = numeric(ss);
    cert.closed_loop_spectrum = eigenvalues(s.A);
    return cert;
  };
  if (n == 0) {
    if (inertia(ss.D + transpose(ss.D)).neg > 0)
      throw Error(ErrorKind::kInfeasible, "D + D^T is not positive semidefinite");
    return finish(MatrixXd(0, 0));
  }

  std::vector<MatrixXd> candidates;
  try {
    candidates.push_back(solve_are(ss).X);
  } catch (const Error&) {
  }
  for (double eps : {1e-6, 1e-4, 1e-2}) {
    StateSpace reg = ss;
    for (int k = 0; k < reg.ports(); ++k) reg.D(k, k) += Rational(eps) / 2;
    try {
      candidates.push_back(solve_are(reg).X);
    } catch (const Error&) {
    }
  }
  for (const auto& X : candidates)
    if (verifies(ss, X)) return finish(X);

  const LmiAffine a = make_affine(ss);
  const std::vector<Eigen::VectorXcd> forced = forced_null_vectors(ss);
  MatrixXd start = candidates.empty() ? MatrixXd::Zero(n, n) : candidates.front();
  if (auto r = face_projections(ss, a, make_face(a, forced, start))) return finish(*r);
  for (const auto& X : candidates)
    for (double tau : {1e-6, 1e-4, 1e-2, 1e-1})
      if (auto r = refine_equality(ss, a, X, tau)) return finish(*r);
  throw Error(ErrorKind::kInfeasible, "no nonnegative X satisfies the dissipation inequality");
}

DissipationFactor dissipation_factorization(const StateSpace& ss, const StorageCertificate& cert) {
  const int n = ss.states();
  const int m = ss.ports();
  MatrixXd L = lmi_block(ss, cert.X);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (L + L.transpose()));
  const double margin = 1e-8 * lmi_scale(L);
  if (L.rows() > 0 && es.eigenvalues().minCoeff() < -margin)
    throw Error(ErrorKind::kNotPSD, "dissipation block matrix is not positive semidefinite");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    if (es.eigenvalues()(k) > margin) keep.push_back(k);
  MatrixXd F(Eigen::Index(keep.size()), n + m);
  for (std::size_t r = 0; r < keep.size(); ++r)
    F.row(Eigen::Index(r)) = std::sqrt(es.eigenvalues()(keep[r])) * es.eigenvectors().col(keep[r]).transpose();
  return {F.leftCols(n), F.rightCols(m)};
}

std::vector<std::complex<double>> spectral_sample_points(const StateSpace& ss) {
  std::vector<cd> avoid = eigenvalues(to_eigen(ss.A));
  const std::size_t half = avoid.size();
  for (std::size_t k = 0; k < half; ++k) avoid.push_back(-avoid[k]);
  std::vector<cd> pts;
  for (int k = 0; k < 16; ++k) {
    cd s = std::polar(0.37 * std::pow(1.45, k), 0.3 + 0.41 * k);
    auto too_close = [&](cd z) {
      for (cd a : avoid)
        if (std::abs(z - a) < 1e-3 * (1.0 + std::abs(z))) return true;
      return false;
    };
    while (too_close(s)) s *= std::polar(1.0, 0.1);
    pts.push_back(s);
  }
  return pts;
}

SpectralCheck spectral_factor_check(const StateSpace& ss, const DissipationFactor& f) {
  Numeric s = numeric(ss);
  const Eigen::Index n = s.A.rows();
  SpectralCheck out;
  if (f.M.cols() != n || f.N.cols() != s.D.cols() || f.M.rows() != f.N.rows())
    throw Error(ErrorKind::kShapeMismatch, "dissipation factor does not match the system");
  auto resolvent_apply = [&](cd z, const MatrixXd& Bm) -> MatrixXcd {
    if (n == 0) return MatrixXcd::Zero(0, Bm.cols());
    MatrixXcd zi = z * MatrixXcd::Identity(n, n) - s.A.cast<cd>();
    return zi.partialPivLu().solve(Bm.cast<cd>());
  };
  out.ok = true;
  for (cd z : spectral_sample_points(ss)) {
    MatrixXcd Gz = s.D.cast<cd>() + s.C.cast<cd>() * resolvent_apply(z, s.B);
    MatrixXcd Gm = s.D.cast<cd>() + s.C.cast<cd>() * resolvent_apply(-z, s.B);
    MatrixXcd Zz = f.N.cast<cd>() + f.M.cast<cd>() * resolvent_apply(z, s.B);
    MatrixXcd Zm = f.N.cast<cd>() + f.M.cast<cd>() * resolvent_apply(-z, s.B);
    MatrixXcd lhs = Gz + Gm.transpose();
    MatrixXcd rhs = Zm.transpose() * Zz;
    const double denom = std::max(1.0, lhs.size() ? lhs.cwiseAbs().maxCoeff() : 0.0);
    const double err = lhs.size() ? (lhs - rhs).cwiseAbs().maxCoeff() / denom : 0.0;
    out.max_relative_error = std::max(out.max_relative_error, err);
    if (err > 1e-7 && out.ok) {
      out.ok = false;
      out.offending_point = z;
    }
  }
  // Right half plane eigenvalues of A must be invisible in Z.
  MatrixXd Mt = f.M.transpose();
  MatrixXd At = s.A.transpose();
  for (cd l : eigenvalues(s.A)) {
    if (l.real() <= 1e-8) continue;
    const bool hidden = pbh_input_defective(s.A, s.B, l, 1e-8) ||
                        (f.M.rows() == 0 || pbh_input_defective(At, Mt, l, 1e-8));
    if (!hidden) out.rhp_poles_hidden = false;
  }
  out.ok = out.ok && out.rhp_poles_hidden;
  return out;
}

bool check_internally_reciprocal(const StateSpace& ss) {
  validate(ss);
  if (!ss.sigma_i || !ss.sigma_e)
    throw Error(ErrorKind::kMissingSignatures, "internal reciprocity needs sigma_i and sigma_e");
  const int n = ss.states();
  const int m = ss.ports();
  QMatrix K = vstack(hstack(QMatrix(n, n) - ss.A, QMatrix(n, m) - ss.B), hstack(ss.C, ss.D));
  QMatrix S(n + m, n + m);
  for (int k = 0; k < n; ++k) S(k, k) = (*ss.sigma_i)(k, k);
  for (int k = 0; k < m; ++k) S(n + k, n + k) = (*ss.sigma_e)(k, k);
  return is_symmetric(S * K);
}

bool check_internally_passive(const StateSpace& ss) {
  validate(ss);
  const int n = ss.states();
  const int m = ss.ports();
  QMatrix K = vstack(hstack(QMatrix(n, n) - ss.A, QMatrix(n, m) - ss.B), hstack(ss.C, ss.D));
  return inertia(K + transpose(K)).neg == 0;
}

}  // namespace passnet
