// SPDX-License-Identifier: Apache-2.0
// Shared fixtures: circuit catalog, toy behaviors, Darlington reference matrices,
// seeded random generators and small exact oracles.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "passnet/behavior.hpp"
#include "passnet/circuits.hpp"
#include "passnet/polymatrix.hpp"
#include "passnet/statespace.hpp"

namespace passnet::testing {

inline const char* kRcNetlist =
    "PORT p P N\n"
    "R ra P M 1\n"
    "C cb P M 1\n"
    "R rc M N 1\n"
    "C cd M N 1\n";

inline const char* kDarlingtonNetlist =
    "PORT p P N\n"
    "L a P Z 2\n"
    "L b P X 2/5\n"
    "L c X N 3/5\n"
    "C d X N 25/3\n"
    "R e Y N 1/4\n"
    "T tf 1 1 Z X X Y 4\n";

inline const char* kTransformerPairNetlist =
    "T t1 1 2 A B C D P1 Q1 1 1\n"
    "T t2 1 2 A B C D P2 Q2 1 1\n"
    "PORT p1 P1 Q1\n"
    "PORT p2 P2 Q2\n";

struct NamedNetlist {
  std::string name;
  std::string text;
  bool has_gyrator = false;
};

/// RLCT circuits (plus one gyrator circuit at the end).
inline std::vector<NamedNetlist> circuit_catalog() {
  return {
      {"rc", kRcNetlist},
      {"lone_l", "PORT p A B\nL l A B 3/2\n"},
      {"lone_c", "PORT p A B\nC c A B 2\n"},
      {"lone_r", "PORT p A B\nR r A B 5\n"},
      {"lc_tank", "PORT p A B\nL l A B 1\nC c A B 1\n"},
      {"rlc_ladder", "PORT p A G\nR r1 A B 1\nL l1 B C 2\nC c1 C G 1/2\nR r2 C G 3\n"},
      {"series_rlc", "PORT p A G\nR r A B 2\nL l B C 1\nC c C G 1\n"},
      {"darlington", kDarlingtonNetlist},
      {"mechanical", "PORT f T G\nSPRING k T G 4\nDAMPER c1 T G 2\nINERTER b T M 1/2\nDAMPER c2 M G 1\n"},
      {"two_port_ladder", "PORT p1 A G\nPORT p2 C G\nL l1 A B 1\nC c1 B G 1\nR r1 B C 2\nR r2 A G 1\n"},
      {"transformer_rc", "PORT p A G\nT t 1 1 A G B G 2\nR r B G 1\nC c B G 1\n"},
      {"gyrator_c", "PORT p A G\nG g A G B G\nC c B G 1\nR r B G 2\n", true},
  };
}

inline Behavior toy_system(int k) {
  switch (k) {
    case 1:
      return behavior_from_pq({{1}}, {{1}});
    case 2:
      return behavior_from_pq({{RatPoly::s() + 1}}, {{RatPoly::s() + 1}});
    default:
      return behavior_from_pq({{RatPoly::s() - 1}}, {{RatPoly::s() - 1}});
  }
}

inline RatPoly cs(const Rational& c) { return c * RatPoly::s(); }
inline Rational q(long n, long d = 1) { return Rational(n, d); }

/// Darlington equations R1 w = R2 l, w = (i_a, i_b, i_c, v_d, i, v),
/// l = (v_a, v_b, v_c, i_d, i_e, v_e, i_f, i_g, v_f, v_g).
inline PolyMatrix darlington_R1() {
  PolyMatrix m(15, 6);
  m(0, 0) = cs(2);
  m(1, 1) = cs(q(2, 5));
  m(2, 2) = cs(q(3, 5));
  m(3, 3) = cs(q(25, 3));
  m(8, 3) = 1;
  m(10, 3) = -1;
  m(10, 5) = 1;
  m(11, 0) = 1;
  m(11, 1) = 1;
  m(11, 4) = -1;
  m(12, 1) = 1;
  m(12, 2) = -1;
  m(13, 2) = 1;
  m(13, 4) = -1;
  m(14, 0) = -1;
  return m;
}

inline PolyMatrix darlington_R2() {
  const std::vector<std::vector<Rational>> rows = {
      {1, 0, 0, 0, 0, 0, 0, 0, 0, 0},         {0, 1, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 1, 0, 0, 0, 0, 0, 0, 0},         {0, 0, 0, 1, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, q(-1, 4), 1, 0, 0, 0, 0},  {0, 0, 0, 0, 0, 0, 0, 0, 1, -4},
      {0, 0, 0, 0, 0, 0, 4, 1, 0, 0},         {1, -1, 0, 0, 0, 0, 0, 0, 1, 0},
      {0, 0, 1, 0, 0, 0, 0, 0, 0, 0},         {0, 0, -1, 0, 0, 1, 0, 0, 0, 1},
      {0, 1, 0, 0, 0, 0, 0, 0, 0, 0},         {0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 1, 0, 0, -1, 1, 0, 0},        {0, 0, 0, -1, -1, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, -1, 0, 0, 0},
  };
  return PolyMatrix::from_constant(qmatrix_from_rows(rows));
}

/// Reference left syzygy basis of darlington_R2().
inline PolyMatrix darlington_M() {
  const std::vector<std::vector<Rational>> rows = {
      {q(1, 2), 0, 0, 0, -2, q(1, 2), q(-1, 2), q(-1, 2), 2, 2, q(-1, 2), q(-1, 2), q(1, 2), q(1, 2), q(-5, 2)},
      {0, q(5, 2), 0, 0, 0, 0, 0, 0, 0, 0, q(-5, 2), 0, 0, 0, 0},
      {0, 0, q(5, 3), 0, 0, 0, 0, 0, q(-5, 3), 0, 0, 0, 0, 0, 0},
      {0, 0, 0, q(3, 25), 0, 0, q(3, 25), 0, 0, 0, 0, 0, q(-3, 25), 0, q(3, 5)},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0},
  };
  return PolyMatrix::from_constant(qmatrix_from_rows(rows));
}

/// Second stage: R1 (i, v) = R2 (i_a, i_b, i_c, v_d) and its syzygy row.
inline PolyMatrix darlington_stage2_R1() {
  return PolyMatrix{{0, q(-1, 2)}, {0, q(-5, 2)}, {0, 0}, {0, 0}, {1, 0}};
}

inline PolyMatrix darlington_stage2_R2() {
  const RatPoly s = RatPoly::s();
  return PolyMatrix{{-s - 2, 0, 0, q(-5, 2)},
                    {0, -s, 0, q(-5, 2)},
                    {0, 0, -s, q(5, 3)},
                    {q(3, 5), q(3, 25), q(-3, 25), -s},
                    {1, 1, 0, 0}};
}

inline PolyMatrix darlington_stage2_M() {
  const RatPoly s = RatPoly::s();
  return PolyMatrix{{s * s - s, s * s + s + q(2, 5), q(3, 5), cs(-5), s * s * s + s * s + s}};
}

// ---------------------------------------------------------------------------
// Random generators (all seeded by the caller).

inline Rational random_rational(std::mt19937& rng, int num = 5, int den = 3) {
  std::uniform_int_distribution<int> n(-num, num);
  std::uniform_int_distribution<int> d(1, den);
  Rational r(n(rng), d(rng));
  r.canonicalize();
  return r;
}

inline RatPoly random_poly(std::mt19937& rng, int degree) {
  std::vector<Rational> c;
  for (int k = 0; k <= degree; ++k) c.push_back(random_rational(rng));
  return RatPoly(std::move(c));
}

inline PolyMatrix random_poly_matrix(std::mt19937& rng, int rows, int cols, int degree) {
  std::uniform_int_distribution<int> deg(0, degree);
  PolyMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = random_poly(rng, deg(rng));
  return m;
}

inline PolyMatrix random_symmetric(std::mt19937& rng, int n, int degree) {
  PolyMatrix m = random_poly_matrix(rng, n, n, degree);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) m(i, j) = m(j, i);
  return m;
}

/// Product of elementary unimodular factors (row swaps, constant scalings,
/// polynomial row additions).
inline PolyMatrix random_unimodular(std::mt19937& rng, int n, int steps = 4) {
  PolyMatrix U = PolyMatrix::identity(n);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int k = 0; k < steps; ++k) {
    PolyMatrix E = PolyMatrix::identity(n);
    const int i = pick(rng);
    const int j = pick(rng);
    if (i != j) {
      E(i, j) = random_poly(rng, 1);
    } else {
      Rational c = random_rational(rng);
      if (sgn(c) == 0) c = 2;
      E(i, i) = c;
    }
    U = E * U;
  }
  return U;
}

inline QMatrix random_qmatrix(std::mt19937& rng, int rows, int cols, int num = 3) {
  QMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = random_rational(rng, num, 2);
  return m;
}

/// K = L L^T + W with W skew; then [-A, -B; C, D] = K is internally passive.
inline StateSpace random_passive_state_space(std::mt19937& rng, int n, int m) {
  QMatrix L = random_qmatrix(rng, n + m, n + m);
  QMatrix W = random_qmatrix(rng, n + m, n + m);
  QMatrix K = L * transpose(L) + W - transpose(W);
  for (int k = 0; k < n + m; ++k) K(k, k) += Rational(1, 10);
  return make_state_space(QMatrix(n, n) - K.block(0, 0, n, n), QMatrix(n, m) - K.block(0, n, n, m),
                          K.block(n, 0, m, n), K.block(n, n, m, m));
}

/// Equal row spaces of two constant (or evaluated) matrices with equal column count.
inline bool same_rowspan(const QMatrix& a, const QMatrix& b) {
  const int ra = rank(a);
  return ra == rank(b) && ra == rank(vstack(a, b));
}

}  // namespace passnet::testing
