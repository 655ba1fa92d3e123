// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include "passnet/poly.hpp"

namespace passnet {

struct Root {
  std::complex<double> value;
  int multiplicity;
};

struct RootSet {
  std::vector<Root> roots;
  RatPoly source;

  int total_multiplicity() const;
  bool empty() const { return roots.empty(); }
};

/// Roots with exact multiplicities (from the square-free decomposition) and
/// numerically polished values; conjugate pairs are made exactly symmetric.
RootSet roots_of(const RatPoly& p);

/// Re(lambda) > -tol, i.e. closed right half plane with a conservative margin.
inline bool in_closed_rhp(std::complex<double> lambda, double tol = 1e-8) {
  return lambda.real() > -tol;
}

}  // namespace passnet
