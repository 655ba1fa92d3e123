// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "passnet/poly.hpp"

namespace passnet {

struct SquareFreeFactor {
  RatPoly factor;  // monic, square-free
  int multiplicity;
};

/// Yun's algorithm: p = lc * prod factor^multiplicity with pairwise coprime factors.
std::vector<SquareFreeFactor> square_free_decomposition(const RatPoly& p);

std::vector<RatPoly> sturm_sequence(const RatPoly& p);
/// Distinct real roots of p in the half-open interval (a, b].
int count_real_roots(const RatPoly& p, const Rational& a, const Rational& b);
/// Distinct real roots of p.
int count_real_roots(const RatPoly& p);

/// Disjoint isolating intervals (lo, hi] with rational endpoints, each holding
/// exactly one distinct real root, sorted ascending. Exact roots are returned as lo == hi.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const RatPoly& p);

bool poly_nonneg_on_reals(const RatPoly& p);
/// A rational x with p(x) < 0, or nullopt when p is nonnegative on the reals.
std::optional<Rational> negative_point(const RatPoly& p);

}  // namespace passnet
