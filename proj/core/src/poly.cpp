// SPDX-License-Identifier: Apache-2.0
#include "passnet/poly.hpp"

#include <cctype>
#include <string>

#include "passnet/errors.hpp"

namespace passnet {

RatPoly::RatPoly(Rational c) {
  if (sgn(c) != 0) c_.push_back(std::move(c));
}

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::monomial(const Rational& c, int k) {
  if (sgn(c) == 0) return {};
  std::vector<Rational> v(std::size_t(k) + 1);
  v[k] = c;
  return RatPoly(std::move(v));
}

void RatPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational RatPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
  return c_[k];
}

Rational RatPoly::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

Rational RatPoly::operator()(const Rational& x) const {
  Rational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

GaussRational RatPoly::operator()(const GaussRational& x) const {
  GaussRational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + GaussRational(*it);
  return acc;
}

std::complex<double> RatPoly::operator()(std::complex<double> x) const {
  std::complex<double> acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

RatPoly RatPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.emplace_back(c_[k] * static_cast<long>(k));
  return RatPoly(std::move(d));
}

RatPoly RatPoly::reflect() const {
  RatPoly r = *this;
  for (std::size_t k = 1; k < r.c_.size(); k += 2) r.c_[k] = -r.c_[k];
  return r;
}

RatPoly RatPoly::monic() const {
  if (c_.empty()) return {};
  RatPoly r = *this;
  Rational lc = c_.back();
  for (auto& c : r.c_) c /= lc;
  return r;
}

RatPoly RatPoly::scale_argument(const Rational& c) const {
  RatPoly r = *this;
  Rational f(1);
  for (auto& a : r.c_) {
    a *= f;
    f *= c;
  }
  r.trim();
  return r;
}

RatPoly RatPoly::operator-() const {
  RatPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

RatPoly& RatPoly::operator*=(const RatPoly& o) { return *this = *this * o; }

RatPoly& RatPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    c_.clear();
    return *this;
  }
  for (auto& a : c_) a *= c;
  return *this;
}

RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
RatPoly operator*(RatPoly a, const Rational& c) { return a *= c; }
RatPoly operator*(const Rational& c, RatPoly a) { return a *= c; }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Rational> out(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return RatPoly(std::move(out));
}

PolyDivision divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::kZeroPolynomial, "division by the zero polynomial");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {RatPoly(), a};
  std::vector<Rational> quo(std::size_t(da - db) + 1);
  const Rational lb = b.leading();
  const auto& bc = b.coeffs();
  for (int k = da - db; k >= 0; --k) {
    const Rational& top = rem[std::size_t(k + db)];
    if (sgn(top) == 0) continue;
    Rational q = top / lb;
    for (int j = 0; j <= db; ++j) rem[std::size_t(k + j)] -= q * bc[j];
    quo[k] = q;
  }
  return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

RatPoly exact_div(const RatPoly& a, const RatPoly& b) {
  PolyDivision d = divmod(a, b);
  if (!d.remainder.is_zero()) throw Error(ErrorKind::kInvalidArgument, "inexact polynomial division");
  return d.quotient;
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a.monic();
  RatPoly y = b.monic();
  while (!y.is_zero()) {
    RatPoly r = divmod(x, y).remainder.monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

RatPoly pow(const RatPoly& p, int k) {
  RatPoly r(1);
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

std::string to_string(const RatPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  const auto& c = p.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (sgn(c[k]) == 0) continue;
    Rational mag = abs(c[k]);
    if (out.empty()) {
      if (sgn(c[k]) < 0) out += "-";
    } else {
      out += sgn(c[k]) < 0 ? " - " : " + ";
    }
    std::string power = k == 0 ? "" : (k == 1 ? "s" : "s^" + std::to_string(k));
    if (k == 0) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += power;
    } else {
      out += mag.get_str() + "*" + power;
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : t_(text) {}

  RatPoly parse() {
    RatPoly p = expr();
    skip();
    if (pos_ != t_.size()) fail("unexpected '" + std::string(1, t_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::kParseError,
                "polynomial '" + std::string(t_) + "' at offset " + std::to_string(pos_) + ": " + why);
  }
  void skip() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < t_.size() && t_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatPoly expr() {
    RatPoly acc;
    bool first = true;
    for (;;) {
      bool neg = false;
      if (eat('+')) {
      } else if (eat('-')) {
        neg = true;
      } else if (!first) {
        return acc;
      }
      RatPoly t = term();
      if (neg) acc -= t;
      else acc += t;
      first = false;
    }
  }

  RatPoly term() {
    RatPoly acc = factor();
    while (eat('*')) acc *= factor();
    return acc;
  }

  RatPoly factor() {
    RatPoly base = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
      if (start == pos_ || pos_ - start > 4) fail("bad exponent");
      base = pow(base, std::stoi(std::string(t_.substr(start, pos_ - start))));
    }
    return base;
  }

  RatPoly primary() {
    skip();
    if (pos_ >= t_.size()) fail("unexpected end");
    char c = t_[pos_];
    if (c == 's') {
      ++pos_;
      return RatPoly::s();
    }
    if (c == '(') {
      ++pos_;
      RatPoly p = expr();
      if (!eat(')')) fail("missing ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    std::size_t start = pos_;
    while (pos_ < t_.size() && (std::isdigit(static_cast<unsigned char>(t_[pos_])) || t_[pos_] == '.' ||
                                t_[pos_] == '/'))
      ++pos_;
    // Exponent suffix of a decimal, e.g. 1e-3.
    if (pos_ < t_.size() && (t_[pos_] == 'e' || t_[pos_] == 'E') && pos_ > start) {
      std::size_t save = pos_++;
      if (pos_ < t_.size() && (t_[pos_] == '+' || t_[pos_] == '-')) ++pos_;
      if (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) {
        while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    if (start == pos_) fail("expected a number, 's' or '('");
    return RatPoly(parse_rational(t_.substr(start, pos_ - start)));
  }

  std::string_view t_;
  std::size_t pos_ = 0;
};

}  // namespace

RatPoly parse_poly(std::string_view text) { return PolyParser(text).parse(); }

}  // namespace passnet
