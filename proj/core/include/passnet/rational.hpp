// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace passnet {

using Rational = mpq_class;

/// Accepts integers, fractions "p/q" and decimals with an optional exponent.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
inline double to_double(const Rational& q) { return q.get_d(); }
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Exact complex number with rational real and imaginary parts.
struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  GaussRational conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

inline bool is_zero(const GaussRational& z) { return sgn(z.re) == 0 && sgn(z.im) == 0; }
inline bool operator==(const GaussRational& a, const GaussRational& b) {
  return a.re == b.re && a.im == b.im;
}
inline GaussRational operator+(const GaussRational& a, const GaussRational& b) {
  return {a.re + b.re, a.im + b.im};
}
inline GaussRational operator-(const GaussRational& a, const GaussRational& b) {
  return {a.re - b.re, a.im - b.im};
}
inline GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
inline GaussRational operator*(const GaussRational& a, const GaussRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline GaussRational operator/(const GaussRational& a, const GaussRational& b) {
  Rational den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
inline GaussRational& operator+=(GaussRational& a, const GaussRational& b) { return a = a + b; }
inline GaussRational& operator-=(GaussRational& a, const GaussRational& b) { return a = a - b; }

std::string to_string(const GaussRational& z);

}  // namespace passnet
