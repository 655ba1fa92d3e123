// SPDX-License-Identifier: Apache-2.0
#include "passnet/matrix.hpp"

#include <sstream>

namespace passnet {

Inertia inertia(const QMatrix& symmetric) {
  if (!is_symmetric(symmetric)) throw Error(ErrorKind::kShapeMismatch, "inertia needs a symmetric matrix");
  QMatrix m = symmetric;
  std::vector<int> active;
  for (int i = 0; i < m.rows(); ++i) active.push_back(i);
  Inertia out;
  auto drop = [&](int idx) { std::erase(active, idx); };
  while (!active.empty()) {
    int k = -1;
    for (int i : active)
      if (!is_zero(m(i, i))) {
        k = i;
        break;
      }
    if (k >= 0) {
      Rational d = m(k, k);
      (sgn(d) > 0 ? out.pos : out.neg)++;
      drop(k);
      for (int i : active) {
        if (is_zero(m(i, k))) continue;
        Rational f = m(i, k) / d;
        for (int j : active) m(i, j) -= f * m(k, j);
      }
      continue;
    }
    int p = -1, q = -1;
    for (int i : active) {
      for (int j : active)
        if (i != j && !is_zero(m(i, j))) {
          p = i;
          q = j;
          break;
        }
      if (p >= 0) break;
    }
    if (p < 0) {
      out.zero += static_cast<int>(active.size());
      break;
    }
    // [0 a; a 0] has one positive and one negative eigenvalue.
    Rational a = m(p, q);
    out.pos++;
    out.neg++;
    drop(p);
    drop(q);
    std::vector<std::vector<Rational>> upd(active.size(), std::vector<Rational>(active.size()));
    for (std::size_t x = 0; x < active.size(); ++x)
      for (std::size_t y = 0; y < active.size(); ++y) {
        int i = active[x], j = active[y];
        upd[x][y] = (m(i, p) * m(q, j) + m(i, q) * m(p, j)) / a;
      }
    for (std::size_t x = 0; x < active.size(); ++x)
      for (std::size_t y = 0; y < active.size(); ++y) m(active[x], active[y]) -= upd[x][y];
  }
  return out;
}

QMatrix qmatrix_from_rows(const std::vector<std::vector<Rational>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
  QMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw Error(ErrorKind::kShapeMismatch, "ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Eigen::MatrixXd to_eigen(const QMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

Eigen::MatrixXcd to_eigen(const GMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex();
  return out;
}

GMatrix to_gaussian(const QMatrix& m) {
  GMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = GaussRational(m(i, j));
  return out;
}

std::string to_string(const QMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << to_string(m(i, j));
  }
  os << ']';
  return os.str();
}

}  // namespace passnet
