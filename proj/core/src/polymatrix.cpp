// SPDX-License-Identifier: Apache-2.0
#include "passnet/polymatrix.hpp"

#include <algorithm>
#include <sstream>

namespace passnet {

PolyMatrix::PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(std::size_t(rows) * cols) {
  if (rows < 0 || cols < 0) throw Error(ErrorKind::kShapeMismatch, "negative matrix dimension");
}

PolyMatrix::PolyMatrix(std::initializer_list<std::initializer_list<RatPoly>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw Error(ErrorKind::kShapeMismatch, "ragged rows");
    e_.insert(e_.end(), r.begin(), r.end());
  }
}

PolyMatrix PolyMatrix::identity(int n) {
  PolyMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = RatPoly(1);
  return m;
}

PolyMatrix PolyMatrix::from_constant(const QMatrix& c) {
  PolyMatrix m(c.rows(), c.cols());
  for (int i = 0; i < c.rows(); ++i)
    for (int j = 0; j < c.cols(); ++j) m(i, j) = RatPoly(c(i, j));
  return m;
}

int PolyMatrix::degree() const {
  int d = RatPoly::kZeroDegree;
  for (const auto& p : e_) d = std::max(d, p.degree());
  return d;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const RatPoly& p) { return p.is_zero(); });
}

QMatrix PolyMatrix::coefficient(int k) const {
  QMatrix c(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) c(i, j) = (*this)(i, j).coeff(k);
  return c;
}

PolyMatrix PolyMatrix::block(int r0, int c0, int nr, int nc) const {
  if (r0 < 0 || c0 < 0 || nr < 0 || nc < 0 || r0 + nr > rows_ || c0 + nc > cols_)
    throw Error(ErrorKind::kShapeMismatch, "block out of range");
  PolyMatrix out(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

PolyMatrix PolyMatrix::select_rows(const std::vector<int>& idx) const {
  PolyMatrix out(static_cast<int>(idx.size()), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (int j = 0; j < cols_; ++j) out(int(i), j) = (*this)(idx[i], j);
  return out;
}

PolyMatrix PolyMatrix::select_cols(const std::vector<int>& idx) const {
  PolyMatrix out(rows_, static_cast<int>(idx.size()));
  for (int i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, int(j)) = (*this)(i, idx[j]);
  return out;
}

PolyMatrix PolyMatrix::reflect() const {
  PolyMatrix out = *this;
  for (auto& p : out.e_) p = p.reflect();
  return out;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::kShapeMismatch, "add shape mismatch");
  PolyMatrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::kShapeMismatch, "sub shape mismatch");
  PolyMatrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

PolyMatrix operator-(const PolyMatrix& a) {
  PolyMatrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = -a(i, j);
  return c;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::kShapeMismatch, "mul shape mismatch");
  PolyMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

PolyMatrix operator*(const RatPoly& p, const PolyMatrix& a) {
  PolyMatrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = p * a(i, j);
  return c;
}

PolyMatrix transpose(const PolyMatrix& a) {
  PolyMatrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

PolyMatrix hstack(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::kShapeMismatch, "hstack row mismatch");
  PolyMatrix c(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

PolyMatrix vstack(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::kShapeMismatch, "vstack column mismatch");
  PolyMatrix c(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
  return c;
}

RatPoly determinant(const PolyMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::kShapeMismatch, "determinant of non-square matrix");
  const int n = a.rows();
  if (n == 0) return RatPoly(1);
  PolyMatrix m = a;
  RatPoly prev(1);
  bool negate = false;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k).is_zero()) {
      int p = k + 1;
      while (p < n && m(p, k).is_zero()) ++p;
      if (p == n) return {};
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) m(i, j) = exact_div(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
      m(i, k) = RatPoly();
    }
    prev = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

std::variant<PolyMatrix, RatPoly> poly_matrix_arith(const PolyMatrix& a, const PolyMatrix& b, ArithOp op) {
  switch (op) {
    case ArithOp::kAdd: return a + b;
    case ArithOp::kSub: return a - b;
    case ArithOp::kMul: return a * b;
    case ArithOp::kTranspose: return transpose(a);
    case ArithOp::kHstack: return hstack(a, b);
    case ArithOp::kVstack: return vstack(a, b);
    case ArithOp::kDeterminant: return determinant(a);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown matrix operation");
}

ComplexMatrix eval_at(const PolyMatrix& m, std::complex<double> lambda) {
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j)(lambda);
  return out;
}

GMatrix eval_exact(const PolyMatrix& m, const GaussRational& lambda) {
  GMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j)(lambda);
  return out;
}

QMatrix eval_exact(const PolyMatrix& m, const Rational& lambda) {
  QMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j)(lambda);
  return out;
}

namespace {

int numeric_rank(const ComplexMatrix& v, double tol) {
  if (v.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(v);
  const auto& sv = svd.singularValues();
  const double thr = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > thr) ++r;
  return r;
}

struct EchelonWork {
  PolyMatrix T, U, Uinv;
  int rank = 0;
  std::vector<int> pivots;
};

EchelonWork echelon(const PolyMatrix& m, bool track_u, bool track_inv) {
  EchelonWork w;
  const int R = m.rows();
  const int C = m.cols();
  w.T = m;
  if (track_u) w.U = PolyMatrix::identity(R);
  if (track_inv) w.Uinv = PolyMatrix::identity(R);
  int r = 0;
  for (int c = 0; c < C && r < R; ++c) {
    for (;;) {
      int best = -1;
      for (int i = r; i < R; ++i)
        if (!w.T(i, c).is_zero() && (best < 0 || w.T(i, c).degree() < w.T(best, c).degree())) best = i;
      if (best < 0) break;
      if (best != r) {
        for (int j = 0; j < C; ++j) std::swap(w.T(best, j), w.T(r, j));
        if (track_u)
          for (int j = 0; j < R; ++j) std::swap(w.U(best, j), w.U(r, j));
        if (track_inv)
          for (int i = 0; i < R; ++i) std::swap(w.Uinv(i, best), w.Uinv(i, r));
      }
      bool cleared = true;
      for (int k = r + 1; k < R; ++k) {
        if (w.T(k, c).is_zero()) continue;
        PolyDivision d = divmod(w.T(k, c), w.T(r, c));
        const RatPoly& q = d.quotient;
        for (int j = c; j < C; ++j)
          if (!w.T(r, j).is_zero()) w.T(k, j) -= q * w.T(r, j);
        if (track_u)
          for (int j = 0; j < R; ++j)
            if (!w.U(r, j).is_zero()) w.U(k, j) -= q * w.U(r, j);
        if (track_inv)
          for (int i = 0; i < R; ++i)
            if (!w.Uinv(i, k).is_zero()) w.Uinv(i, r) += q * w.Uinv(i, k);
        if (!w.T(k, c).is_zero()) cleared = false;
      }
      if (cleared) {
        w.pivots.push_back(c);
        ++r;
        break;
      }
    }
  }
  w.rank = r;
  return w;
}

}  // namespace

int rank_at(const PolyMatrix& m, std::complex<double> lambda, double tol) {
  if (tol < 0) throw Error(ErrorKind::kInvalidArgument, "negative tolerance");
  if (tol == 0)
    throw Error(ErrorKind::kToleranceRequired, "exact rank needs a rational point; pass tol > 0");
  return numeric_rank(eval_at(m, lambda), tol);
}

int rank_at(const PolyMatrix& m, const GaussRational& lambda, double tol) {
  if (tol < 0) throw Error(ErrorKind::kInvalidArgument, "negative tolerance");
  if (tol == 0) return rank(eval_exact(m, lambda));
  return numeric_rank(eval_at(m, lambda.to_complex()), tol);
}

RowEchelon row_echelon(const PolyMatrix& m, bool track_inverse) {
  EchelonWork w = echelon(m, true, track_inverse);
  RowEchelon out;
  out.U = std::move(w.U);
  out.Uinv = std::move(w.Uinv);
  out.T = std::move(w.T);
  out.rank = w.rank;
  out.pivot_cols = std::move(w.pivots);
  return out;
}

int normal_rank(const PolyMatrix& m) { return echelon(m, false, false).rank; }

RatPoly minor_gcd(const PolyMatrix& m) {
  const int g = m.rows();
  if (g == 0) return RatPoly(1);
  EchelonWork w = echelon(transpose(m), false, false);
  if (w.rank < g) throw Error(ErrorKind::kRankDeficient, "minor_gcd needs full normal row rank");
  RatPoly d(1);
  for (int k = 0; k < g; ++k) d *= w.T(k, k);
  return d.monic();
}

std::vector<int> row_degrees(const PolyMatrix& m) {
  std::vector<int> d(m.rows(), RatPoly::kZeroDegree);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) d[i] = std::max(d[i], m(i, j).degree());
  return d;
}

QMatrix leading_row_coefficients(const PolyMatrix& m) {
  std::vector<int> d = row_degrees(m);
  QMatrix L(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) L(i, j) = d[i] < 0 ? Rational(0) : m(i, j).coeff(d[i]);
  return L;
}

PolyMatrix row_reduce(PolyMatrix m, std::vector<PolyMatrix*> companions) {
  for (;;) {
    std::vector<int> d = row_degrees(m);
    for (int x : d)
      if (x < 0) throw Error(ErrorKind::kRankDeficient, "row_reduce needs full row rank");
    QMatrix L = leading_row_coefficients(m);
    QMatrix ker = left_nullspace(L);
    if (ker.rows() == 0) return m;
    int top = -1;
    for (int j = 0; j < m.rows(); ++j)
      if (!is_zero(ker(0, j)) && (top < 0 || d[j] > d[top])) top = j;
    auto combine = [&](PolyMatrix& a) {
      std::vector<RatPoly> row(a.cols());
      for (int j = 0; j < a.rows(); ++j) {
        if (is_zero(ker(0, j))) continue;
        RatPoly f = RatPoly::monomial(ker(0, j), d[top] - d[j]);
        for (int c = 0; c < a.cols(); ++c) row[c] += f * a(j, c);
      }
      for (int c = 0; c < a.cols(); ++c) a(top, c) = std::move(row[c]);
    };
    combine(m);
    for (PolyMatrix* p : companions) combine(*p);
  }
}

PolyMatrix left_syzygy_basis(const PolyMatrix& m) {
  if (m.cols() == 0 || m.is_zero()) return PolyMatrix::identity(m.rows());
  EchelonWork w = echelon(m, true, false);
  std::vector<int> idx;
  for (int i = w.rank; i < m.rows(); ++i) idx.push_back(i);
  if (idx.empty()) return PolyMatrix(0, m.rows());
  return row_reduce(w.U.select_rows(idx));
}

PolyMatrix para_conjugate(const PolyMatrix& m) { return transpose(m.reflect()); }

std::string to_string(const PolyMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << to_string(m(i, j));
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace passnet
