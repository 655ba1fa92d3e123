// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "passnet/matrix.hpp"
#include "passnet/poly.hpp"

namespace passnet {

inline constexpr double kDefaultTol = 1e-8;

/// Dense row-major matrix of RatPoly entries. Empty shapes (0 x n, n x 0) are legal.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols);
  PolyMatrix(std::initializer_list<std::initializer_list<RatPoly>> rows);

  static PolyMatrix identity(int n);
  static PolyMatrix from_constant(const QMatrix& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  RatPoly& operator()(int i, int j) { return e_[std::size_t(i) * cols_ + j]; }
  const RatPoly& operator()(int i, int j) const { return e_[std::size_t(i) * cols_ + j]; }

  /// Maximum entry degree; RatPoly::kZeroDegree for the zero matrix.
  int degree() const;
  bool is_zero() const;
  /// Matrix of the s^k coefficients.
  QMatrix coefficient(int k) const;

  PolyMatrix block(int r0, int c0, int nr, int nc) const;
  PolyMatrix select_rows(const std::vector<int>& idx) const;
  PolyMatrix select_cols(const std::vector<int>& idx) const;
  /// Entrywise s -> -s.
  PolyMatrix reflect() const;

  bool operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<RatPoly> e_;
};

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix operator-(const PolyMatrix& a);
PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix operator*(const RatPoly& p, const PolyMatrix& a);
PolyMatrix transpose(const PolyMatrix& a);
PolyMatrix hstack(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix vstack(const PolyMatrix& a, const PolyMatrix& b);
/// Fraction-free (Bareiss) determinant.
RatPoly determinant(const PolyMatrix& a);

enum class ArithOp { kAdd, kSub, kMul, kTranspose, kHstack, kVstack, kDeterminant };
/// Single entry point for the matrix operations; b is ignored by unary ops.
std::variant<PolyMatrix, RatPoly> poly_matrix_arith(const PolyMatrix& a, const PolyMatrix& b,
                                                    ArithOp op);

ComplexMatrix eval_at(const PolyMatrix& m, std::complex<double> lambda);
GMatrix eval_exact(const PolyMatrix& m, const GaussRational& lambda);
QMatrix eval_exact(const PolyMatrix& m, const Rational& lambda);

/// Numeric rank by singular values above tol * max(1, sigma_max).
/// tol == 0 throws ToleranceRequired: a floating lambda has no exact path.
int rank_at(const PolyMatrix& m, std::complex<double> lambda, double tol = kDefaultTol);
/// With tol == 0 the rank is computed exactly over Q(i).
int rank_at(const PolyMatrix& m, const GaussRational& lambda, double tol = 0.0);

int normal_rank(const PolyMatrix& m);
/// Monic gcd of the maximal minors; requires full normal row rank.
RatPoly minor_gcd(const PolyMatrix& m);
/// Minimal polynomial basis (as rows) of {p : p m = 0}.
PolyMatrix left_syzygy_basis(const PolyMatrix& m);
/// (j,k) entry is m(k,j) evaluated at -s.
PolyMatrix para_conjugate(const PolyMatrix& m);

/// Row echelon form under unimodular row operations: U m = T.
/// Rows [rank, rows) of T are zero. Uinv is only filled when requested.
struct RowEchelon {
  PolyMatrix U;
  PolyMatrix Uinv;
  PolyMatrix T;
  int rank = 0;
  std::vector<int> pivot_cols;
};
RowEchelon row_echelon(const PolyMatrix& m, bool track_inverse = false);

/// Row degrees; kZeroDegree for zero rows.
std::vector<int> row_degrees(const PolyMatrix& m);
/// Coefficients of s^{row degree} per row (zero rows give zero rows).
QMatrix leading_row_coefficients(const PolyMatrix& m);

/// Brings m (no zero rows) to row-reduced form by unimodular row operations,
/// applying the same operations to every matrix in `companions`.
PolyMatrix row_reduce(PolyMatrix m, std::vector<PolyMatrix*> companions = {});

std::string to_string(const PolyMatrix& m);

}  // namespace passnet
