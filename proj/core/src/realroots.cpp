// SPDX-License-Identifier: Apache-2.0
#include "passnet/realroots.hpp"

#include <algorithm>

#include "passnet/errors.hpp"

namespace passnet {

namespace {

RatPoly square_free_part(const RatPoly& p) {
  if (p.degree() < 1) return p.monic();
  return exact_div(p.monic(), gcd(p, p.derivative()));
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int variations_at(const std::vector<RatPoly>& seq, const Rational& x) {
  std::vector<int> s;
  for (const auto& p : seq) s.push_back(sgn(p(x)));
  return sign_changes(s);
}

int variations_at_infinity(const std::vector<RatPoly>& seq, bool positive) {
  std::vector<int> s;
  for (const auto& p : seq) {
    int lc = sgn(p.leading());
    s.push_back(positive || p.degree() % 2 == 0 ? lc : -lc);
  }
  return sign_changes(s);
}

/// Every real root lies strictly inside (-bound, bound).
Rational cauchy_bound(const RatPoly& p) {
  Rational m(0);
  const Rational lc = abs(p.leading());
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coeff(k)) / lc));
  return m + 1;
}

}  // namespace

std::vector<SquareFreeFactor> square_free_decomposition(const RatPoly& p) {
  std::vector<SquareFreeFactor> out;
  if (p.degree() < 1) return out;
  RatPoly f = p.monic();
  RatPoly fp = f.derivative();
  RatPoly a = gcd(f, fp);
  RatPoly b = exact_div(f, a);
  RatPoly c = exact_div(fp, a);
  RatPoly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    RatPoly ai = gcd(b, d);
    b = exact_div(b, ai);
    c = exact_div(d, ai);
    d = c - b.derivative();
    if (ai.degree() > 0) out.push_back({ai, i});
  }
  return out;
}

std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
  std::vector<RatPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  RatPoly next = p.derivative();
  while (!next.is_zero()) {
    seq.push_back(next);
    const std::size_t n = seq.size();
    next = -divmod(seq[n - 2], seq[n - 1]).remainder;
  }
  return seq;
}

int count_real_roots(const RatPoly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw Error(ErrorKind::kZeroPolynomial, "root count of the zero polynomial");
  if (a >= b) return 0;
  auto seq = sturm_sequence(square_free_part(p));
  return variations_at(seq, a) - variations_at(seq, b);
}

int count_real_roots(const RatPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::kZeroPolynomial, "root count of the zero polynomial");
  auto seq = sturm_sequence(square_free_part(p));
  return variations_at_infinity(seq, false) - variations_at_infinity(seq, true);
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const RatPoly& p) {
  std::vector<std::pair<Rational, Rational>> out;
  if (p.degree() < 1) return out;
  RatPoly sf = square_free_part(p);
  auto seq = sturm_sequence(sf);
  const Rational bound = cauchy_bound(sf);
  struct Work {
    Rational lo, hi;
    int vlo, vhi;
  };
  std::vector<Work> stack{{-bound, bound, variations_at(seq, -bound), variations_at(seq, bound)}};
  while (!stack.empty()) {
    Work w = stack.back();
    stack.pop_back();
    const int n = w.vlo - w.vhi;
    if (n == 0) continue;
    if (n == 1) {
      if (sgn(sf(w.hi)) == 0) out.emplace_back(w.hi, w.hi);
      else out.emplace_back(w.lo, w.hi);
      continue;
    }
    Rational mid = (w.lo + w.hi) / 2;
    const int vm = variations_at(seq, mid);
    stack.push_back({mid, w.hi, vm, w.vhi});
    stack.push_back({w.lo, mid, w.vlo, vm});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Rational> negative_point(const RatPoly& p) {
  if (p.is_zero()) return std::nullopt;
  if (sgn(p.leading()) < 0) return cauchy_bound(p) + 1;
  RatPoly odd(1);
  for (const auto& f : square_free_decomposition(p))
    if (f.multiplicity % 2 == 1) odd *= f.factor;
  auto roots = isolate_real_roots(odd);
  if (roots.empty()) return std::nullopt;
  // p changes sign across each real root of the odd part; bracket the first one
  // tightly enough that p has no other root in the bracket.
  const RatPoly sf = square_free_part(p);
  auto symmetric_witness = [&](const Rational& r, Rational width) {
    for (;;) {
      Rational a = r - width;
      Rational b = r + width;
      if (count_real_roots(sf, a, b) == 1 && sgn(sf(a)) != 0 && sgn(sf(b)) != 0)
        return sgn(p(a)) < 0 ? a : b;
      width /= 2;
    }
  };
  auto [lo, hi] = roots.front();
  if (lo == hi) return symmetric_witness(hi, Rational(1));
  for (;;) {
    if (count_real_roots(sf, lo, hi) == 1 && sgn(sf(lo)) != 0 && sgn(sf(hi)) != 0)
      return sgn(p(lo)) < 0 ? lo : hi;
    Rational mid = (lo + hi) / 2;
    if (sgn(odd(mid)) == 0) return symmetric_witness(mid, Rational(hi - lo));
    if (count_real_roots(odd, lo, mid) == 1) hi = mid;
    else lo = mid;
  }
}

bool poly_nonneg_on_reals(const RatPoly& p) { return !negative_point(p).has_value(); }

}  // namespace passnet
