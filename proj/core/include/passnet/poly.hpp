// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "passnet/rational.hpp"

namespace passnet {

/// Univariate polynomial in s with exact rational coefficients.
/// coeffs()[k] multiplies s^k; trailing zeros are always trimmed.
class RatPoly {
 public:
  /// Degree reported for the zero polynomial.
  static constexpr int kZeroDegree = -1;

  RatPoly() = default;
  RatPoly(Rational c);  // NOLINT(google-explicit-constructor)
  RatPoly(long c) : RatPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  RatPoly(int c) : RatPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  explicit RatPoly(std::vector<Rational> coeffs);

  static RatPoly monomial(const Rational& c, int k);
  /// The indeterminate s.
  static RatPoly s() { return monomial(Rational(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Rational coeff(int k) const;
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational leading() const;

  Rational operator()(const Rational& x) const;
  GaussRational operator()(const GaussRational& x) const;
  std::complex<double> operator()(std::complex<double> x) const;

  RatPoly derivative() const;
  /// p(-s).
  RatPoly reflect() const;
  /// Divides by the leading coefficient; zero stays zero.
  RatPoly monic() const;
  /// p(c s) for a rational c.
  RatPoly scale_argument(const Rational& c) const;

  RatPoly operator-() const;
  RatPoly& operator+=(const RatPoly& o);
  RatPoly& operator-=(const RatPoly& o);
  RatPoly& operator*=(const RatPoly& o);
  RatPoly& operator*=(const Rational& c);

  bool operator==(const RatPoly& o) const { return c_ == o.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

RatPoly operator+(RatPoly a, const RatPoly& b);
RatPoly operator-(RatPoly a, const RatPoly& b);
RatPoly operator*(const RatPoly& a, const RatPoly& b);
RatPoly operator*(RatPoly a, const Rational& c);
RatPoly operator*(const Rational& c, RatPoly a);
inline RatPoly operator*(long c, RatPoly a) { return a *= Rational(c); }
inline RatPoly operator*(RatPoly a, long c) { return a *= Rational(c); }

struct PolyDivision {
  RatPoly quotient;
  RatPoly remainder;
};

PolyDivision divmod(const RatPoly& a, const RatPoly& b);
/// Quotient a / b; throws if b does not divide a.
RatPoly exact_div(const RatPoly& a, const RatPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
RatPoly gcd(const RatPoly& a, const RatPoly& b);
RatPoly pow(const RatPoly& p, int k);

/// Renders "a0 + a1*s + a2*s^2" in increasing degree.
std::string to_string(const RatPoly& p);
/// Parses sums of terms c, c*s, c*s^k, s^k in any order; throws ParseError.
RatPoly parse_poly(std::string_view text);

}  // namespace passnet
