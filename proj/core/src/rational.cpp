// SPDX-License-Identifier: Apache-2.0
#include "passnet/rational.hpp"

#include <cctype>
#include <string>

#include "passnet/errors.hpp"

namespace passnet {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  auto fail = [&]() {
    return Error(ErrorKind::kParseError, "invalid number '" + std::string(text) + "'");
  };
  if (s.empty()) throw fail();
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw fail();
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorKind::kParseError, "zero denominator in '" + std::string(text) + "'");
    value = Rational(mpz_class(std::string(num), 10), d);
    value.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view es = s.substr(e + 1);
      bool eneg = false;
      if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
        eneg = es.front() == '-';
        es.remove_prefix(1);
      }
      if (!all_digits(es) || es.size() > 6) throw fail();
      exponent = std::stol(std::string(es));
      if (eneg) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string_view ip = s;
    std::string_view fp;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      ip = s.substr(0, dot);
      fp = s.substr(dot + 1);
    }
    if (ip.empty() && fp.empty()) throw fail();
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) throw fail();
    mpz_class digits(std::string(ip) + std::string(fp), 10);
    value = Rational(digits) * pow10(exponent - static_cast<long>(fp.size()));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const GaussRational& z) {
  if (is_zero(z.im)) return to_string(z.re);
  std::string im = sgn(z.im) < 0 ? "-" + to_string(Rational(-z.im)) : "+" + to_string(z.im);
  if (is_zero(z.re)) return (sgn(z.im) < 0 ? im : im.substr(1)) + "*i";
  return to_string(z.re) + im + "*i";
}

}  // namespace passnet
