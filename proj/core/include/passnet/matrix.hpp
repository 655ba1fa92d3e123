// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "passnet/errors.hpp"
#include "passnet/rational.hpp"

namespace passnet {

/// Dense row-major matrix over an exact field (Rational or GaussRational).
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(Rational(1));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

  bool operator==(const DenseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  DenseMatrix block(int r0, int c0, int nr, int nc) const {
    DenseMatrix out(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = DenseMatrix<Rational>;
using GMatrix = DenseMatrix<GaussRational>;
using ComplexMatrix = Eigen::MatrixXcd;

template <typename T>
DenseMatrix<T> transpose(const DenseMatrix<T>& a) {
  DenseMatrix<T> t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <typename T>
DenseMatrix<T> operator*(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::kShapeMismatch, "matrix product shape mismatch");
  DenseMatrix<T> c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <typename T>
DenseMatrix<T> operator+(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::kShapeMismatch, "matrix sum shape mismatch");
  DenseMatrix<T> c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

template <typename T>
DenseMatrix<T> operator-(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::kShapeMismatch, "matrix difference shape mismatch");
  DenseMatrix<T> c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

template <typename T>
DenseMatrix<T> hstack(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::kShapeMismatch, "hstack row mismatch");
  DenseMatrix<T> c(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

template <typename T>
DenseMatrix<T> vstack(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::kShapeMismatch, "vstack column mismatch");
  DenseMatrix<T> c(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
  return c;
}

/// Reduced row echelon form; returns pivot columns.
template <typename T>
std::vector<int> rref_in_place(DenseMatrix<T>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    T inv = T(Rational(1)) / m(r, c);
    for (int j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <typename T>
int rank(DenseMatrix<T> m) {
  return static_cast<int>(rref_in_place(m).size());
}

/// Basis of {x : m x = 0}, one column per free variable.
template <typename T>
DenseMatrix<T> nullspace(DenseMatrix<T> m) {
  std::vector<int> piv = rref_in_place(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<int> free;
  for (int c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  DenseMatrix<T> n(m.cols(), static_cast<int>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    n(free[k], int(k)) = T(Rational(1));
    for (std::size_t r = 0; r < piv.size(); ++r) n(piv[r], int(k)) = -m(int(r), free[k]);
  }
  return n;
}

/// Basis of {y : y^T m = 0}, one row per vector.
template <typename T>
DenseMatrix<T> left_nullspace(const DenseMatrix<T>& m) {
  return transpose(nullspace(transpose(m)));
}

template <typename T>
DenseMatrix<T> inverse(const DenseMatrix<T>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::kShapeMismatch, "inverse of non-square matrix");
  DenseMatrix<T> aug = hstack(m, DenseMatrix<T>::identity(m.rows()));
  std::vector<int> piv = rref_in_place(aug);
  if (int(piv.size()) < m.rows() || (m.rows() > 0 && piv.back() >= m.rows()))
    throw Error(ErrorKind::kRankDeficient, "matrix is singular");
  return aug.block(0, m.rows(), m.rows(), m.rows());
}

template <typename T>
T determinant(DenseMatrix<T> m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::kShapeMismatch, "determinant of non-square matrix");
  T det = T(Rational(1));
  const int n = m.rows();
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && is_zero(m(p, c))) ++p;
    if (p == n) return T(Rational(0));
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det = det * m(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      T f = m(i, c) / m(c, c);
      for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

template <typename T>
bool is_symmetric(const DenseMatrix<T>& m) {
  if (m.rows() != m.cols()) return false;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j)
      if (!(m(i, j) == m(j, i))) return false;
  return true;
}

struct Inertia {
  int pos = 0;
  int neg = 0;
  int zero = 0;
};

/// Exact inertia of a symmetric rational matrix by congruence (LDL^T with
/// symmetric pivoting and 2x2 pivots when the diagonal vanishes).
Inertia inertia(const QMatrix& symmetric);

QMatrix qmatrix_from_rows(const std::vector<std::vector<Rational>>& rows);
Eigen::MatrixXd to_eigen(const QMatrix& m);
Eigen::MatrixXcd to_eigen(const GMatrix& m);
GMatrix to_gaussian(const QMatrix& m);
std::string to_string(const QMatrix& m);

}  // namespace passnet
