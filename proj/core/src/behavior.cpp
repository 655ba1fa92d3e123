// SPDX-License-Identifier: Apache-2.0
#include "passnet/behavior.hpp"

#include <algorithm>
#include <numeric>

namespace passnet {

PolyMatrix Behavior::R() const { return hstack(P, -Q); }

Behavior behavior_from_pq(PolyMatrix P, PolyMatrix Q, std::vector<std::string> labels) {
  if (P.rows() != P.cols() || Q.rows() != Q.cols() || P.rows() != Q.rows())
    throw Error(ErrorKind::kShapeMismatch, "P and Q must be square of equal size");
  const int n = P.rows();
  if (labels.empty())
    for (int k = 0; k < n; ++k) labels.push_back("p" + std::to_string(k + 1));
  if (static_cast<int>(labels.size()) != n)
    throw Error(ErrorKind::kShapeMismatch, "port label count differs from behavior size");
  Behavior b{std::move(P), std::move(Q), std::move(labels)};
  if (normal_rank(b.R()) != n)
    throw Error(ErrorKind::kDependentRows, "rows of [P, -Q] are dependent over the rational functions");
  return b;
}

KernelRep make_kernel_rep(PolyMatrix R, std::vector<std::string> labels) {
  if (labels.empty())
    for (int k = 0; k < R.cols(); ++k) labels.push_back("w" + std::to_string(k + 1));
  if (static_cast<int>(labels.size()) != R.cols())
    throw Error(ErrorKind::kShapeMismatch, "variable label count differs from column count");
  if (normal_rank(R) != R.rows())
    throw Error(ErrorKind::kDependentRows, "kernel representation rows are dependent");
  return {std::move(R), std::move(labels)};
}

KernelRep kernel_rep(const Behavior& b) {
  std::vector<std::string> labels;
  for (const auto& p : b.ports) labels.push_back("i_" + p);
  for (const auto& p : b.ports) labels.push_back("v_" + p);
  return {b.R(), std::move(labels)};
}

Controllability is_controllable(const KernelRep& k) {
  RatPoly g = minor_gcd(k.R);
  Controllability out;
  out.controllable = g.degree() == 0;
  out.uncontrollable_modes = roots_of(g);
  return out;
}

Controllability is_controllable(const Behavior& b) { return is_controllable(kernel_rep(b)); }

bool is_stabilisable(const KernelRep& k, double tol) {
  for (const auto& r : is_controllable(k).uncontrollable_modes.roots)
    if (in_closed_rhp(r.value, tol)) return false;
  return true;
}

bool is_stabilisable(const Behavior& b, double tol) { return is_stabilisable(kernel_rep(b), tol); }

Decomposition decompose(const KernelRep& k) {
  const int g = k.R.rows();
  // Column echelon form: U R^T = [T; 0], so R = T^T (first g columns of U^{-1})^T.
  RowEchelon e = row_echelon(transpose(k.R), /*track_inverse=*/true);
  if (e.rank < g) throw Error(ErrorKind::kRankDeficient, "decompose needs full normal row rank");
  std::vector<int> first(g);
  std::iota(first.begin(), first.end(), 0);
  Decomposition out;
  out.F = transpose(e.T.select_rows(first));
  out.controllable_part = {transpose(e.Uinv.select_cols(first)), k.labels};
  RatPoly det = determinant(out.F);
  out.autonomous_modes = roots_of(det.monic());
  out.autonomous_dim = det.degree();
  return out;
}

Decomposition decompose(const Behavior& b) { return decompose(kernel_rep(b)); }

IoPartition make_io_partition(const Behavior& b, std::vector<bool> current_input) {
  const int n = b.size();
  if (static_cast<int>(current_input.size()) != n)
    throw Error(ErrorKind::kShapeMismatch, "partition size differs from port count");
  IoPartition part;
  part.current_input = std::move(current_input);
  part.sigma_e = QMatrix(n, n);
  part.P_hat = PolyMatrix(n, n);
  part.Q_hat = PolyMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    const bool ci = part.current_input[k];
    part.sigma_e(k, k) = ci ? 1 : -1;
    part.input_labels.push_back((ci ? "i_" : "v_") + b.ports[k]);
    part.output_labels.push_back((ci ? "v_" : "i_") + b.ports[k]);
    for (int r = 0; r < n; ++r) {
      part.P_hat(r, k) = ci ? b.P(r, k) : -b.Q(r, k);
      part.Q_hat(r, k) = ci ? b.Q(r, k) : -b.P(r, k);
    }
  }
  return part;
}

namespace {

/// Row-reduced copies of (Q_hat, P_hat); nullopt when Q_hat is singular.
std::optional<std::pair<PolyMatrix, PolyMatrix>> row_reduced_pair(const IoPartition& part) {
  if (determinant(part.Q_hat).is_zero()) return std::nullopt;
  PolyMatrix N = part.P_hat;
  PolyMatrix D = row_reduce(part.Q_hat, {&N});
  return std::make_pair(std::move(D), std::move(N));
}

bool rows_proper(const PolyMatrix& D, const PolyMatrix& N) {
  std::vector<int> dd = row_degrees(D);
  std::vector<int> nd = row_degrees(N);
  for (std::size_t j = 0; j < dd.size(); ++j)
    if (nd[j] > dd[j]) return false;
  return true;
}

}  // namespace

bool is_proper(const IoPartition& part) {
  auto pair = row_reduced_pair(part);
  return pair && rows_proper(pair->first, pair->second);
}

std::vector<std::vector<bool>> partition_search_order(int n) {
  if (n > 20) throw Error(ErrorKind::kInvalidArgument, "too many ports for exhaustive partition search");
  std::vector<std::vector<bool>> order;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<bool> current(n);
    for (int k = 0; k < n; ++k) current[k] = !((mask >> (n - 1 - k)) & 1u);
    order.push_back(current);
  }
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& c) {
    return std::count(a.begin(), a.end(), false) < std::count(c.begin(), c.end(), false);
  });
  return order;
}

IoPartition find_io_partition(const Behavior& b) {
  for (const auto& current : partition_search_order(b.size())) {
    IoPartition part = make_io_partition(b, current);
    if (is_proper(part)) return part;
  }
  throw Error(ErrorKind::kNoPartition, "no input selection gives a nonsingular proper Q_hat^{-1} P_hat");
}

StateSpace to_observable_iso(const Behavior& b, const IoPartition& part) {
  if (static_cast<int>(part.current_input.size()) != b.size())
    throw Error(ErrorKind::kPartitionInvalid, "partition does not match the behavior");
  auto pair = row_reduced_pair(part);
  if (!pair) throw Error(ErrorKind::kPartitionInvalid, "Q_hat is singular");
  const PolyMatrix& Dm = pair->first;
  const PolyMatrix& Nm = pair->second;
  if (!rows_proper(Dm, Nm)) throw Error(ErrorKind::kPartitionInvalid, "transfer is not proper");

  const int m = b.size();
  const std::vector<int> k = row_degrees(Dm);
  std::vector<int> offset(m + 1, 0);
  for (int j = 0; j < m; ++j) offset[j + 1] = offset[j] + k[j];
  const int n = offset[m];

  QMatrix Dh = leading_row_coefficients(Dm);
  QMatrix Nh(m, m);
  QMatrix E(m, n);
  for (int j = 0; j < m; ++j) {
    for (int c = 0; c < m; ++c) Nh(j, c) = Nm(j, c).coeff(k[j]);
    if (k[j] >= 1) E(j, offset[j]) = 1;
  }
  QMatrix Dh_inv = inverse(Dh);
  StateSpace ss;
  ss.C = Dh_inv * E;
  ss.D = Dh_inv * Nh;
  ss.A = QMatrix(n, n);
  ss.B = QMatrix(n, m);

  // w_{j,l} = D_{j,l} y - N_{j,l} u expressed in (x, u).
  auto w_row = [&](int j, int l, QMatrix& wx, QMatrix& wu) {
    QMatrix dl(1, m), nl(1, m);
    for (int c = 0; c < m; ++c) {
      dl(0, c) = Dm(j, c).coeff(l);
      nl(0, c) = Nm(j, c).coeff(l);
    }
    wx = dl * ss.C;
    wu = dl * ss.D - nl;
  };
  for (int j = 0; j < m; ++j) {
    for (int i = 1; i <= k[j]; ++i) {
      const int row = offset[j] + i - 1;
      QMatrix wx, wu;
      w_row(j, i < k[j] ? k[j] - i : 0, wx, wu);
      for (int c = 0; c < n; ++c) ss.A(row, c) = -wx(0, c);
      for (int c = 0; c < m; ++c) ss.B(row, c) = -wu(0, c);
      if (i < k[j]) ss.A(row, row + 1) += 1;
    }
  }
  ss.sigma_e = part.sigma_e;
  return ss;
}

PolyMatrix adjugate(const PolyMatrix& m) {
  const int n = m.rows();
  if (n != m.cols()) throw Error(ErrorKind::kShapeMismatch, "adjugate of non-square matrix");
  PolyMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = RatPoly(1);
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> rows, cols;
      for (int r = 0; r < n; ++r)
        if (r != j) rows.push_back(r);
      for (int c = 0; c < n; ++c)
        if (c != i) cols.push_back(c);
      RatPoly minor = determinant(m.select_rows(rows).select_cols(cols));
      adj(i, j) = (i + j) % 2 == 0 ? minor : -minor;
    }
  return adj;
}

std::vector<QMatrix> markov_parameters(const PolyMatrix& Q_hat, const PolyMatrix& P_hat, int count) {
  const int m = Q_hat.rows();
  RatPoly den = determinant(Q_hat);
  if (den.is_zero()) throw Error(ErrorKind::kPartitionInvalid, "Q_hat is singular");
  PolyMatrix num = adjugate(Q_hat) * P_hat;
  const int d = den.degree();
  std::vector<QMatrix> out(count, QMatrix(m, P_hat.cols()));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < P_hat.cols(); ++j) {
      const RatPoly& b = num(i, j);
      if (b.degree() > d) throw Error(ErrorKind::kPartitionInvalid, "transfer is not proper");
      // Power series in 1/s of b/den.
      std::vector<Rational> g(count);
      for (int t = 0; t < count; ++t) {
        Rational acc = b.coeff(d - t);
        for (int q = 1; q <= t; ++q) acc -= den.coeff(d - q) * g[t - q];
        g[t] = acc / den.leading();
        out[t](i, j) = g[t];
      }
    }
  return out;
}

}  // namespace passnet
