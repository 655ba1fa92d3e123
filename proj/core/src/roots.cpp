// SPDX-License-Identifier: Apache-2.0
#include "passnet/roots.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "passnet/errors.hpp"
#include "passnet/realroots.hpp"

namespace passnet {

namespace {

using cd = std::complex<double>;

std::vector<cd> companion_eigenvalues(const RatPoly& f) {
  const int d = f.degree();
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  const double lc = f.leading().get_d();
  for (int k = 0; k < d; ++k) comp(0, k) = -f.coeff(d - 1 - k).get_d() / lc;
  for (int k = 1; k < d; ++k) comp(k, k - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<cd> out;
  for (int k = 0; k < d; ++k) out.push_back(es.eigenvalues()(k));
  return out;
}

cd polish(const RatPoly& f, const RatPoly& df, cd z) {
  for (int it = 0; it < 50; ++it) {
    cd fz = f(z);
    cd dz = df(z);
    if (std::abs(dz) == 0.0) break;
    cd next = z - fz / dz;
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
    if (std::abs(f(next)) >= std::abs(fz)) break;
    z = next;
  }
  return z;
}

/// Roots of a monic square-free factor with exact real/non-real structure.
std::vector<cd> factor_roots(const RatPoly& f) {
  const int d = f.degree();
  if (d == 1) return {cd(-f.coeff(0).get_d() / f.coeff(1).get_d(), 0.0)};
  const RatPoly df = f.derivative();
  std::vector<cd> z = companion_eigenvalues(f);
  for (auto& v : z) v = polish(f, df, v);
  const int real_count = count_real_roots(f);
  std::sort(z.begin(), z.end(), [](cd a, cd b) { return std::abs(a.imag()) < std::abs(b.imag()); });
  std::vector<cd> out;
  for (auto [lo, hi] : isolate_real_roots(f)) {
    const int shi = sgn(f(hi));
    if (shi == 0) lo = hi;
    for (int it = 0; it < 400 && lo != hi; ++it) {
      if (Rational(hi - lo).get_d() < 1e-16 * std::max(1.0, std::abs(hi.get_d()))) break;
      Rational mid = (lo + hi) / 2;
      const int sm = sgn(f(mid));
      if (sm == 0) lo = hi = mid;
      else if (sm == shi) hi = mid;
      else lo = mid;
    }
    out.push_back(cd(Rational((lo + hi) / 2).get_d(), 0.0));
  }
  std::vector<cd> rest(z.begin() + real_count, z.end());
  std::sort(rest.begin(), rest.end(), [](cd a, cd b) { return a.imag() > b.imag(); });
  const std::size_t pairs = rest.size() / 2;
  for (std::size_t k = 0; k < pairs; ++k) {
    cd up(rest[k].real(), std::abs(rest[k].imag()));
    out.push_back(up);
    out.push_back(std::conj(up));
  }
  return out;
}

}  // namespace

int RootSet::total_multiplicity() const {
  int n = 0;
  for (const auto& r : roots) n += r.multiplicity;
  return n;
}

RootSet roots_of(const RatPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::kZeroPolynomial, "roots of the zero polynomial");
  RootSet out;
  out.source = p;
  for (const auto& f : square_free_decomposition(p))
    for (cd z : factor_roots(f.factor)) out.roots.push_back({z, f.multiplicity});
  std::sort(out.roots.begin(), out.roots.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

}  // namespace passnet
