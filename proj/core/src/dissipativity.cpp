// SPDX-License-Identifier: Apache-2.0
#include "passnet/dissipativity.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>

#include "passnet/realroots.hpp"

namespace passnet {

namespace {

/// Hermitian form H(lambda) = W(lambda) J W(lambda)^* and the kernel matrix
/// whose rank drops define conditions 2 and 3.
struct SupplyForm {
  PolyMatrix W;
  QMatrix J;
  PolyMatrix R;
};

SupplyForm passivity_form(const Behavior& b) {
  const int n = b.size();
  QMatrix J(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    J(k, n + k) = 1;
    J(n + k, k) = 1;
  }
  return {hstack(b.P, b.Q), J, b.R()};
}

PolyMatrix phi_of(const SupplyForm& f) {
  return f.W * PolyMatrix::from_constant(f.J) * para_conjugate(f.W);
}

/// Real polynomial m(w) = d(i w) for an even polynomial d(s).
RatPoly on_imaginary_axis(const RatPoly& d) {
  std::vector<Rational> c(std::max(0, d.degree() + 1));
  for (int k = 0; k <= d.degree(); k += 2) c[k] = (k / 2) % 2 == 0 ? d.coeff(k) : Rational(-d.coeff(k));
  for (int k = 1; k <= d.degree(); k += 2)
    if (sgn(d.coeff(k)) != 0) throw Error(ErrorKind::kInvalidArgument, "principal minor of Phi is not even");
  return RatPoly(std::move(c));
}

std::pair<double, double> negative_interval(const RatPoly& m, const Rational& omega) {
  const double w = omega.get_d();
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& r : roots_of(m).roots) {
    if (std::abs(r.value.imag()) > 1e-9 * std::max(1.0, std::abs(r.value))) continue;
    const double x = r.value.real();
    if (x < w) lo = std::max(lo, x);
    if (x > w) hi = std::min(hi, x);
  }
  return {lo, hi};
}

Condition1Result condition1(const SupplyForm& f, const CheckOptions& opts) {
  Condition1Result res;
  const PolyMatrix phi = phi_of(f);
  const int n = phi.rows();
  // Boundary: every principal minor of the Hermitian matrix Phi(i w) is >= 0.
  for (unsigned mask = 1; mask < (1u << n) && res.holds; ++mask) {
    std::vector<int> idx;
    for (int k = 0; k < n; ++k)
      if (mask & (1u << k)) idx.push_back(k);
    RatPoly m = on_imaginary_axis(determinant(phi.select_rows(idx).select_cols(idx)));
    if (auto w = negative_point(m)) {
      res.holds = false;
      res.omega = *w;
      res.minor_indices = idx;
      res.omega_interval = negative_interval(m, *w);
    }
  }
  if (!res.holds) return res;

  // Infinity: leading row coefficients of W carry the limit of the scaled form.
  QMatrix Wh = leading_row_coefficients(f.W);
  if (inertia(Wh * f.J * transpose(Wh)).neg > 0) {
    res.holds = false;
    res.infinity_failed = true;
    return res;
  }

  if (!opts.interior_sampling) return res;
  res.interior_checked = true;
  const Eigen::MatrixXd J = to_eigen(f.J);
  for (auto lambda : rhp_sample_points()) {
    ComplexMatrix w = eval_at(f.W, lambda);
    ComplexMatrix h = w * J * w.adjoint();
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if (h.rows() > 0 && es.eigenvalues().minCoeff() < -opts.tol * scale) {
      res.holds = false;
      res.interior_point = lambda;
      return res;
    }
  }
  return res;
}

Condition2Result condition2(const PolyMatrix& R, double tol) {
  Condition2Result res;
  for (const auto& r : roots_of(minor_gcd(R)).roots)
    if (in_closed_rhp(r.value, tol) && (!res.witness || r.value.real() > res.witness->real())) {
      res.holds = false;
      res.witness = r.value;
    }
  return res;
}

Condition3Result condition3(const PolyMatrix& phi, const PolyMatrix& R) {
  Condition3Result res;
  const RatPoly g = minor_gcd(R);
  if (g.degree() < 1) return res;
  const PolyMatrix N = left_syzygy_basis(phi);
  if (N.rows() == 0) return res;
  // p(lambda) = N(lambda)^T c lies in the left kernel of R(lambda) iff
  // (N R)(lambda)^T c = 0, so the condition is a rank test on N R at the roots of g.
  const PolyMatrix NR = N * R;
  RatPoly common = g;
  if (normal_rank(NR) == N.rows()) common = gcd(minor_gcd(NR), g);
  if (common.degree() < 1) return res;
  res.holds = false;
  const auto roots = roots_of(common).roots;
  res.lambda = roots.back().value;
  ComplexMatrix nr = eval_at(NR, *res.lambda);
  Eigen::JacobiSVD<ComplexMatrix> svd(nr.transpose(), Eigen::ComputeFullV);
  Eigen::VectorXcd c = svd.matrixV().col(svd.matrixV().cols() - 1);
  res.p = eval_at(N, *res.lambda).transpose() * c;
  return res;
}

PassivityReport assemble(const SupplyForm& f, const CheckOptions& opts) {
  PassivityReport rep;
  rep.cond1 = condition1(f, opts);
  rep.cond2 = condition2(f.R, opts.tol);
  rep.cond3 = condition3(phi_of(f), f.R);
  rep.verdict = rep.cond1.holds && rep.cond2.holds && rep.cond3.holds;
  if (rep.cond1.interior_checked && rep.cond1.holds)
    rep.warnings.push_back("condition 1: open right half plane certified by sampling at " +
                           std::to_string(rhp_sample_points().size()) + " points");
  if (!opts.interior_sampling)
    rep.warnings.push_back("condition 1: interior sampling disabled; boundary-pass only");
  return rep;
}

}  // namespace

std::vector<std::complex<double>> rhp_sample_points() {
  std::vector<std::complex<double>> pts;
  for (int a = 0; a < 8; ++a) {
    const double r = std::pow(10.0, -3.0 + 6.0 * a / 7.0);
    for (int k = 0; k < 8; ++k) {
      const double theta = -std::numbers::pi / 2 + (k + 0.5) * std::numbers::pi / 8;
      pts.push_back(std::polar(r, theta));
    }
  }
  return pts;
}

ParaHermitianPart para_hermitian_part(const Behavior& b) { return {phi_of(passivity_form(b))}; }

Condition1Result check_condition1(const Behavior& b, const CheckOptions& opts) {
  return condition1(passivity_form(b), opts);
}

Condition2Result check_condition2(const Behavior& b, double tol) { return condition2(b.R(), tol); }

Condition3Result check_condition3(const Behavior& b) {
  return condition3(para_hermitian_part(b).phi, b.R());
}

PassivityReport is_passive(const Behavior& b, const CheckOptions& opts) {
  return assemble(passivity_form(b), opts);
}

PassivityReport bounded_real_check(const PolyMatrix& P, const PolyMatrix& Q, const Rational& gamma,
                                   const CheckOptions& opts) {
  if (Q.rows() != Q.cols() || P.rows() != Q.rows())
    throw Error(ErrorKind::kShapeMismatch, "bounded-real check needs square Q and matching P");
  if (sgn(gamma) <= 0) throw Error(ErrorKind::kInvalidArgument, "gamma must be positive");
  SupplyForm f;
  f.W = hstack(P, Q);
  f.R = hstack(P, -Q);
  if (normal_rank(f.R) != f.R.rows())
    throw Error(ErrorKind::kDependentRows, "rows of [P, -Q] are dependent over the rational functions");
  const int m = P.cols();
  const int q = Q.cols();
  f.J = QMatrix(m + q, m + q);
  for (int k = 0; k < m; ++k) f.J(k, k) = -1;
  for (int k = 0; k < q; ++k) f.J(m + k, m + k) = gamma * gamma;
  return assemble(f, opts);
}

bool is_reciprocal(const Behavior& b) {
  PolyMatrix pq = b.P * transpose(b.Q);
  return pq == transpose(pq);
}

bool is_lossless(const Behavior& b, const CheckOptions& opts) {
  if (!para_hermitian_part(b).phi.is_zero()) return false;
  if (minor_gcd(b.R()).degree() != 0) return false;
  return check_condition1(b, opts).holds;
}

bool is_reversible(const Behavior& b, const CheckOptions& opts) {
  return is_reciprocal(b) && is_lossless(b, opts);
}

namespace {
bool relaxation_like(const Behavior& b, const CheckOptions& opts, bool nonneg) {
  if (!is_reciprocal(b)) return false;
  if (minor_gcd(b.R()).degree() != 0) return false;
  Inertia in = inertia(bezoutian(b).entries);
  if ((nonneg ? in.neg : in.pos) != 0) return false;
  return check_condition1(b, opts).holds;
}
}  // namespace

bool is_relaxation(const Behavior& b, const CheckOptions& opts) { return relaxation_like(b, opts, true); }
bool is_rl_dual(const Behavior& b, const CheckOptions& opts) { return relaxation_like(b, opts, false); }

Bezoutian bezoutian(const Behavior& b) {
  const int n = b.size();
  const int m = std::max(0, std::max(b.P.degree(), b.Q.degree()));
  // Nab = Q_a P_b^T - P_a Q_b^T, coefficient of z^a w^b in the numerator.
  std::vector<QMatrix> Pc, Qc;
  for (int a = 0; a <= m; ++a) {
    Pc.push_back(b.P.coefficient(a));
    Qc.push_back(b.Q.coefficient(a));
  }
  auto num = [&](int a, int c) { return Qc[a] * transpose(Pc[c]) - Pc[a] * transpose(Qc[c]); };
  std::vector<std::vector<QMatrix>> B(m, std::vector<QMatrix>(m, QMatrix(n, n)));
  for (int a = 0; a < m; ++a)
    for (int c = 0; c < m; ++c)
      for (int k = 0; k <= c && a + 1 + k <= m; ++k) B[a][c] = B[a][c] + num(a + 1 + k, c - k);
  // Multiply back by (z - w) and compare with the numerator.
  auto blk = [&](int a, int c) { return a < 0 || c < 0 || a >= m || c >= m ? QMatrix(n, n) : B[a][c]; };
  for (int a = 0; a <= m; ++a)
    for (int c = 0; c <= m; ++c)
      if (!(blk(a - 1, c) - blk(a, c - 1) == num(a, c)))
        throw Error(ErrorKind::kNotReciprocal, "P Q^T is not symmetric; the Bezoutian quotient is not polynomial");
  Bezoutian out;
  out.degree = m;
  out.ports = n;
  out.entries = QMatrix(n * m, n * m);
  for (int a = 0; a < m; ++a)
    for (int c = 0; c < m; ++c)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.entries(a * n + i, c * n + j) = B[a][c](i, j);
  return out;
}

InertiaBounds inertia_bounds(const Behavior& b) {
  if (!is_reciprocal(b)) throw Error(ErrorKind::kNotReciprocal, "inertia bounds need a reciprocal behavior");
  Inertia in = inertia(bezoutian(b).entries);
  InertiaBounds out;
  out.pos_eigs = in.pos;
  out.neg_eigs = in.neg;
  out.uncontrollable_modes = decompose(b).autonomous_dim;
  out.even_parity_lower = out.pos_eigs + out.uncontrollable_modes;
  out.odd_parity_lower = out.neg_eigs + out.uncontrollable_modes;
  out.capacitor_lower = out.even_parity_lower;
  out.inductor_lower = out.odd_parity_lower;
  return out;
}

}  // namespace passnet
