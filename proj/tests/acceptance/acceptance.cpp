// SPDX-License-Identifier: Apache-2.0
// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "passnet/circuits.hpp"
#include "passnet/dissipativity.hpp"
#include "passnet/simulate.hpp"
#include "passnet/statespace.hpp"

namespace passnet {
namespace {

using testing::same_rowspan;

const RatPoly s = RatPoly::s();

// A check accumulates failure messages; a criterion passes when none were recorded.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::vector<Rational> lambdas() {
  return {Rational(1, 3), Rational(-7, 5), Rational(11, 2), Rational(2), Rational(-13, 9)};
}

Behavior scalar(RatPoly p, RatPoly q) { return behavior_from_pq({{std::move(p)}}, {{std::move(q)}}); }

void darlington_elimination(Check& c) {
  AssembledEquations eq = assemble_equations(parse_netlist(testing::kDarlingtonNetlist));
  c.expect(eq.equations() == 15 && eq.unknowns() == 16, "expected 15 equations in 16 unknowns");
  c.expect((testing::darlington_M() * testing::darlington_R2()).is_zero(), "reference syzygy does not annihilate R2");
  KernelRep k = eliminate_internal(eq);
  c.expect(k.R.rows() == 5 && k.R.cols() == 6, "internal kernel is not 5x6");
  const PolyMatrix ref = testing::darlington_M() * testing::darlington_R1();
  for (const Rational& x : lambdas())
    c.expect(same_rowspan(eval_exact(k.R, x), eval_exact(ref, x)), "rowspan mismatch at " + x.get_str());
}

void darlington_impedance(Check& c) {
  Behavior b = driving_point_behavior(parse_netlist(testing::kDarlingtonNetlist));
  const RatPoly num = s * s * s + s * s + s;
  const RatPoly den = 3 * s * s + 2 * s + 1;
  c.expect(b.size() == 1, "not a one-port");
  // Z = P/Q reduced; compare cross products and check coprimality.
  c.expect(b.P(0, 0) * den == num * b.Q(0, 0), "impedance differs");
  c.expect(gcd(b.P(0, 0), b.Q(0, 0)).degree() == 0, "P and Q share a factor");
}

void rc_example(Check& c) {
  Circuit circuit = parse_netlist(testing::kRcNetlist);
  Behavior b = driving_point_behavior(circuit);
  c.expect(b.P(0, 0) * (s + 1) == 2 * b.Q(0, 0) && b.Q(0, 0).degree() == 1, "behavior is not 2 i = (s + 1) v");
  c.expect(is_controllable(b).controllable, "behavior should be controllable");
  StateSpace ss = extract_iso(circuit);
  const QMatrix A = qmatrix_from_rows({{-1, 0}, {0, -1}});
  const QMatrix B = qmatrix_from_rows({{1}, {1}});
  const QMatrix C = qmatrix_from_rows({{1, 1}});
  // The printed system is invariant under swapping the two states.
  c.expect(ss.A == A && ss.B == B && ss.C == C && ss.D == QMatrix(1, 1), "ISO differs from the printed system");
  c.expect(!pbh_controllable(ss), "ISO should be PBH-uncontrollable");
  c.expect(!pbh_observable(ss), "ISO should be PBH-unobservable");
}

void toy_triple(Check& c) {
  c.expect(is_passive(testing::toy_system(1)).verdict, "system (i) should be passive");
  c.expect(is_passive(testing::toy_system(2)).verdict, "system (ii) should be passive");
  PassivityReport r = is_passive(testing::toy_system(3));
  c.expect(!r.verdict, "system (iii) should not be passive");
  c.expect(!r.cond2.holds && r.cond2.witness.has_value(), "system (iii) should fail condition 2 with a witness");
  if (r.cond2.witness) c.expect(*r.cond2.witness == std::complex<double>(1.0, 0.0), "witness is not 1");
}

bool bezoutian_identity(const Behavior& b, const Bezoutian& bz) {
  const int n = b.size();
  auto block = [&](int a, int k) {
    if (a < 0 || k < 0 || a >= bz.degree || k >= bz.degree) return QMatrix(n, n);
    return bz.entries.block(a * n, k * n, n, n);
  };
  const int top = std::max(b.P.degree(), b.Q.degree()) + 1;
  for (int a = 0; a <= top; ++a)
    for (int k = 0; k <= top; ++k) {
      QMatrix rhs = b.Q.coefficient(a) * transpose(b.P.coefficient(k)) -
                    b.P.coefficient(a) * transpose(b.Q.coefficient(k));
      if (!(block(a - 1, k) - block(a, k - 1) == rhs)) return false;
    }
  return true;
}

void bezoutian_checks(Check& c) {
  c.expect(bezoutian(scalar(2, s + 1)).entries == qmatrix_from_rows({{2}}), "bezoutian([2], [s+1]) != [2]");
  std::mt19937 rng(5);
  int verified = 0;
  while (verified < 100) {
    const int n = 1 + verified % 3;
    PolyMatrix X = testing::random_poly_matrix(rng, n, n, 2);
    PolyMatrix S = testing::random_symmetric(rng, n, 2);
    Behavior b;
    try {
      b = verified % 2 ? behavior_from_pq(X * S, X) : behavior_from_pq(X, X * S);
    } catch (const Error&) {
      continue;
    }
    c.expect(std::max(b.P.degree(), b.Q.degree()) <= 4, "random pair exceeds degree 4");
    c.expect(bezoutian_identity(b, bezoutian(b)), "two-variable identity fails");
    ++verified;
  }
}

void inertia_checks(Check& c) {
  int circuits = 0;
  for (const auto& item : testing::circuit_catalog()) {
    if (item.has_gyrator) continue;
    Circuit circuit = parse_netlist(item.text);
    InertiaBounds ib = inertia_bounds(driving_point_behavior(circuit));
    c.expect(circuit.capacitor_count() >= ib.capacitor_lower, item.name + ": too few capacitors");
    c.expect(circuit.inductor_count() >= ib.inductor_lower, item.name + ": too few inductors");
    ++circuits;
  }
  c.expect(circuits >= 6, "catalog has fewer than 6 RLCT circuits");
}

std::vector<std::pair<std::string, Behavior>> behavior_catalog() {
  std::vector<std::pair<std::string, Behavior>> out;
  for (const auto& item : testing::circuit_catalog())
    out.emplace_back(item.name, driving_point_behavior(parse_netlist(item.text)));
  for (int k = 1; k <= 3; ++k) out.emplace_back("toy" + std::to_string(k), testing::toy_system(k));
  out.emplace_back("negative_resistor", scalar(1, -1));
  out.emplace_back("negative_inductor", scalar(-s, 1));
  out.emplace_back("unstable_pole", scalar(s + 2, s - 1));
  return out;
}

void are_lmi_cross_validation(Check& c) {
  for (const auto& [name, b] : behavior_catalog()) {
    IoPartition part;
    try {
      part = find_io_partition(b);
    } catch (const Error&) {
      continue;
    }
    StateSpace ss = to_observable_iso(b, part);
    bool feasible = true;
    try {
      lmi_feasible(ss);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kInfeasible) throw;
      feasible = false;
    }
    const bool expected = feasible && is_stabilisable(b);
    c.expect(is_passive(b).verdict == expected, name + ": is_passive disagrees with LMI and stabilisability");
  }
  StateSpace ss = make_state_space(qmatrix_from_rows({{-1}}), qmatrix_from_rows({{1}}), qmatrix_from_rows({{1}}),
                                   qmatrix_from_rows({{1}}));
  StorageCertificate cert = solve_are(ss);
  c.expect(std::abs(cert.X(0, 0) - (3 - 2 * std::sqrt(2.0))) <= 1e-8, "X != 3 - 2 sqrt 2");
  c.expect(cert.closed_loop_spectrum.size() == 1 &&
               std::abs(cert.closed_loop_spectrum[0] - std::complex<double>(-std::sqrt(2.0), 0)) <= 1e-8,
           "closed-loop eigenvalue != -sqrt 2");
}

void spectral_factor(Check& c) {
  const std::vector<std::pair<std::string, StateSpace>> systems = {
      {"scalar", make_state_space(qmatrix_from_rows({{-1}}), qmatrix_from_rows({{1}}), qmatrix_from_rows({{1}}),
                                  qmatrix_from_rows({{1}}))},
      {"resistor", make_state_space(QMatrix(0, 0), QMatrix(0, 1), QMatrix(1, 0), qmatrix_from_rows({{5}}))},
  };
  for (const auto& [name, ss] : systems) {
    DissipationFactor f = dissipation_factorization(ss, solve_are(ss));
    SpectralCheck ok = spectral_factor_check(ss, f);
    c.expect(spectral_sample_points(ss).size() == 16, name + ": expected 16 sample points");
    c.expect(ok.ok && ok.max_relative_error <= 1e-7, name + ": true factor rejected");
    DissipationFactor bad = f;
    bad.N(0, 0) += 0.1;
    c.expect(!spectral_factor_check(ss, bad).ok, name + ": corrupted factor accepted");
  }
}

void dissipation_by_simulation(Check& c) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> amp(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const int n = 1 + k % 3;
    const int m = 1 + k % 2;
    StateSpace ss = testing::random_passive_state_space(rng, n, m);
    StorageCertificate cert = lmi_feasible(ss);
    std::vector<double> times;
    std::vector<Eigen::VectorXd> values;
    for (int j = 0; j < 10; ++j) {
      times.push_back(j);
      values.push_back(Eigen::VectorXd::NullaryExpr(m, [&] { return amp(rng); }));
    }
    Signal u = Signal::piecewise_constant(times, values);
    Eigen::VectorXd x0 = Eigen::VectorXd::NullaryExpr(n, [&] { return amp(rng); });
    SimulationResult r = simulate(ss, x0, u, 0.0, 10.0, 1e-3);
    const double storage = 0.5 * r.x_final.dot(cert.X * r.x_final) - 0.5 * x0.dot(cert.X * x0);
    c.expect(storage <= r.supplied + 1e-3, "system " + std::to_string(k) + ": storage exceeds supply");
  }
  // System (iii): dx/dt = x, y = x + u with u = -e^t and x(0) = 2, so y = e^t.
  StateSpace iii = make_state_space(qmatrix_from_rows({{1}}), qmatrix_from_rows({{0}}), qmatrix_from_rows({{1}}),
                                    qmatrix_from_rows({{1}}));
  const double t0 = 0.0, t1 = 1.0;
  Eigen::VectorXd x0 = Eigen::VectorXd::Constant(1, 2 * std::exp(t0));
  const double e = simulate_extracted_energy(iii, x0, Signal::exponential(Eigen::VectorXd::Constant(1, -1.0), 1.0),
                                             t0, t1, 1e-3);
  const double expected = 0.5 * (std::exp(2 * t1) - std::exp(2 * t0));
  c.expect(std::abs(e - expected) <= 1e-4 * expected, "extracted energy " + std::to_string(e));
}

void bounded_real(Check& c) {
  c.expect(bounded_real_check({{1}}, {{s + 1}}, 1).verdict, "1/(s+1) should be bounded real at gamma 1");
  c.expect(!bounded_real_check({{2}}, {{1}}, 1).verdict, "y = 2u should fail at gamma 1");
  c.expect(bounded_real_check({{2}}, {{1}}, 3).verdict, "y = 2u should pass at gamma 3");
  bool previous = false;
  for (Rational g : {Rational(1, 2), Rational(1), Rational(3, 2), Rational(5, 2), Rational(3)}) {
    const bool v = bounded_real_check({{2}}, {{1}}, g).verdict;
    c.expect(!previous || v, "verdict not monotone in gamma");
    previous = v;
  }
}

void transformer_pair(Check& c) {
  Behavior b = driving_point_behavior(parse_netlist(testing::kTransformerPairNetlist));
  // Columns (i1, i2, v1, v2): i1 + i2 = 0 and v1 - v2 = 0.
  c.expect(b.R().degree() == 0, "behavior is not static");
  c.expect(same_rowspan(b.R().coefficient(0), qmatrix_from_rows({{1, 1, 0, 0}, {0, 0, 1, -1}})),
           "behavior is not i1 = -i2, v2 = v1");
}

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<void(Check&)> run;
};

}  // namespace
}  // namespace passnet

int main() {
  using namespace passnet;
  const std::vector<Criterion> criteria = {
      {1, "Darlington elimination", 5, darlington_elimination},
      {2, "Darlington impedance", 5, darlington_impedance},
      {3, "RC example", 1, rc_example},
      {4, "toy triple", 1, toy_triple},
      {5, "Bezoutian", 10, bezoutian_checks},
      {6, "inertia bounds", 10, inertia_checks},
      {7, "ARE/LMI cross-validation", 5, are_lmi_cross_validation},
      {8, "spectral factor", 1, spectral_factor},
      {9, "dissipation by simulation", 30, dissipation_by_simulation},
      {10, "bounded real", 2, bounded_real},
      {11, "transformer interconnection", 1, transformer_pair},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.budget_s) check.failures.push_back("runtime " + std::to_string(secs) + " s over budget");
    const bool ok = check.failures.empty();
    if (!ok) ++failed;
    std::printf("criterion %d: %s  %s (%.3f s)\n", cr.id, ok ? "PASS" : "FAIL", cr.name.c_str(), secs);
    for (const auto& f : check.failures) std::printf("    %s\n", f.c_str());
  }
  return failed == 0 ? 0 : 1;
}
