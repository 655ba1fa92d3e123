// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "catalog.hpp"
#include "passnet/circuits.hpp"
#include "passnet/dissipativity.hpp"

namespace passnet {
namespace {

using testing::same_rowspan;

const RatPoly s = RatPoly::s();

std::optional<ErrorKind> kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

int line_of(const std::string& text) {
  try {
    parse_netlist(text);
  } catch (const Error& e) {
    return e.line();
  }
  return -1;
}

std::vector<Rational> sample_points() {
  return {Rational(1, 3), Rational(-7, 5), Rational(11, 2), Rational(2), Rational(-13, 9)};
}

TEST(Netlist, ParsesElementsAndPorts) {
  Circuit c = parse_netlist("R r1 1 2 1.0\nPORT p 1 2\n");
  ASSERT_EQ(c.elements.size(), 1u);
  EXPECT_EQ(c.elements[0].kind, ElementKind::kResistor);
  EXPECT_EQ(c.elements[0].value, Rational(1));
  ASSERT_EQ(c.ports.size(), 1u);

  Circuit rc = parse_netlist(testing::kRcNetlist);
  EXPECT_EQ(rc.elements.size(), 4u);
  EXPECT_EQ(rc.ports.size(), 1u);
  EXPECT_EQ(rc.capacitor_count(), 2);
}

TEST(Netlist, MechanicalAliases) {
  Circuit c = parse_netlist(
      "DAMPER d1 1 2 3.0\nSPRING k 1 2 4\nINERTER b 1 2 1/2\nLEVER lv 1 2 3 4 2\n"
      "R r 3 4 1\nPORT p 1 2\n");
  EXPECT_EQ(c.elements[0].kind, ElementKind::kResistor);
  EXPECT_EQ(c.elements[0].value, Rational(1, 3));
  EXPECT_EQ(c.elements[1].kind, ElementKind::kInductor);
  EXPECT_EQ(c.elements[1].value, Rational(1, 4));
  EXPECT_EQ(c.elements[2].kind, ElementKind::kCapacitor);
  EXPECT_EQ(c.elements[2].value, Rational(1, 2));
  EXPECT_EQ(c.elements[3].kind, ElementKind::kTransformer);
  EXPECT_EQ(c.elements[3].turns(0, 0), Rational(2));
}

TEST(Netlist, CommentsCaseAndTokens) {
  Circuit c = parse_netlist("# header\n\nr R1 a b 2 # trailing\nport P a b\n");
  EXPECT_EQ(c.elements.size(), 1u);
  EXPECT_EQ(c.nodes, (std::vector<std::string>{"a", "b"}));
}

TEST(Netlist, Errors) {
  EXPECT_EQ(kind_of([] { parse_netlist("R r 1 2\nPORT p 1 2\n"); }), ErrorKind::kParseError);
  EXPECT_EQ(line_of("PORT p 1 2\nR r 1 2 x\n"), 2);
  EXPECT_EQ(line_of("PORT p 1 2\n\nQ q 1 2 3\n"), 3);
  EXPECT_EQ(kind_of([] { parse_netlist("PORT p 1 2\nC c 1 2 0\n"); }), ErrorKind::kNonPositiveParameter);
  EXPECT_EQ(kind_of([] { parse_netlist("PORT p 1 2\nL l 1 2 -1\n"); }), ErrorKind::kNonPositiveParameter);
  EXPECT_EQ(kind_of([] { parse_netlist("PORT p 1 2\nR r 1 2 1\nR s 2 3 1\n"); }), ErrorKind::kDanglingNode);
  EXPECT_EQ(kind_of([] { parse_netlist("PORT p 1 2\nR p 1 2 1\n"); }), ErrorKind::kParseError);
  EXPECT_EQ(kind_of([] { parse_netlist("T t 1 1 a b c d\nPORT p a b\nPORT q c d\n"); }), ErrorKind::kParseError);
  EXPECT_EQ(kind_of([] { parse_netlist("# nothing\n"); }), ErrorKind::kParseError);
}

TEST(Assembly, DarlingtonCounts) {
  AssembledEquations eq = assemble_equations(parse_netlist(testing::kDarlingtonNetlist));
  EXPECT_EQ(eq.equations(), 15);
  EXPECT_EQ(eq.unknowns(), 16);
  EXPECT_EQ(eq.R1.cols(), 6);
  EXPECT_EQ(eq.R2.cols(), 10);
  EXPECT_EQ(eq.element_rows, 7);
  EXPECT_EQ(eq.kcl_rows, 4);
  EXPECT_EQ(eq.kvl_rows, 4);
  EXPECT_TRUE(eq.properly_eliminable);
  EXPECT_EQ(eq.w_labels, (std::vector<std::string>{"i_a", "i_b", "i_c", "v_d", "i_p", "v_p"}));
  EXPECT_EQ(eq.l_labels, (std::vector<std::string>{"v_a", "v_b", "v_c", "i_d", "i_e", "v_e", "i_tf.1",
                                                   "i_tf.2", "v_tf.1", "v_tf.2"}));
}

TEST(Assembly, DarlingtonMatchesReferenceEquations) {
  AssembledEquations eq = assemble_equations(parse_netlist(testing::kDarlingtonNetlist));
  PolyMatrix ours = hstack(eq.R1, -eq.R2);
  PolyMatrix ref = hstack(testing::darlington_R1(), -testing::darlington_R2());
  for (const Rational& x : sample_points()) EXPECT_TRUE(same_rowspan(eval_exact(ours, x), eval_exact(ref, x)));
}

TEST(Assembly, ReferenceSyzygyAnnihilates) {
  EXPECT_TRUE((testing::darlington_M() * testing::darlington_R2()).is_zero());
  EXPECT_TRUE((testing::darlington_stage2_M() * testing::darlington_stage2_R2()).is_zero());
}

TEST(Elimination, DarlingtonInternalRowspan) {
  AssembledEquations eq = assemble_equations(parse_netlist(testing::kDarlingtonNetlist));
  EXPECT_TRUE((left_syzygy_basis(eq.R2) * eq.R2).is_zero());
  KernelRep k = eliminate_internal(eq);
  EXPECT_EQ(k.R.rows(), 5);
  EXPECT_EQ(k.R.cols(), 6);
  PolyMatrix ref = testing::darlington_M() * testing::darlington_R1();
  for (const Rational& x : sample_points()) EXPECT_TRUE(same_rowspan(eval_exact(k.R, x), eval_exact(ref, x)));
}

TEST(Elimination, DarlingtonSecondStage) {
  EliminationChain chain = eliminate_chain(parse_netlist(testing::kDarlingtonNetlist));
  EXPECT_EQ(chain.external.R.rows(), 1);
  EXPECT_EQ(chain.external.R.cols(), 2);
  PolyMatrix ref = testing::darlington_stage2_M() * testing::darlington_stage2_R1();
  EXPECT_EQ(ref, (PolyMatrix{{s * s * s + s * s + s, -(3 * s * s + 2 * s + 1)}}));
  for (const Rational& x : sample_points())
    EXPECT_TRUE(same_rowspan(eval_exact(chain.external.R, x), eval_exact(ref, x)));
}

TEST(DrivingPoint, DarlingtonImpedance) {
  Behavior b = driving_point_behavior(parse_netlist(testing::kDarlingtonNetlist));
  EXPECT_EQ(b.P(0, 0), s * s * s + s * s + s);
  EXPECT_EQ(b.Q(0, 0), 3 * s * s + 2 * s + 1);
  EXPECT_TRUE(is_controllable(b).controllable);
}

TEST(DrivingPoint, RcCircuit) {
  Behavior b = driving_point_behavior(parse_netlist(testing::kRcNetlist));
  EXPECT_EQ(b.P, PolyMatrix{{2}});
  EXPECT_EQ(b.Q, PolyMatrix{{s + 1}});
  EXPECT_EQ(b.ports, std::vector<std::string>{"p"});
}

TEST(DrivingPoint, SingleElements) {
  EXPECT_EQ(driving_point_behavior(parse_netlist("PORT p a b\nL l a b 1\n")).P, PolyMatrix{{s}});
  Behavior r = driving_point_behavior(parse_netlist("PORT p a b\nR r a b 5\n"));
  // Rows are normalized up to a constant; compare v = 5 i as a ratio.
  EXPECT_EQ(r.P(0, 0), 5 * r.Q(0, 0));
  EXPECT_EQ(r.Q(0, 0).degree(), 0);
  Behavior c = driving_point_behavior(parse_netlist("PORT p a b\nC c a b 2\n"));
  EXPECT_EQ(c.P, PolyMatrix{{Rational(1, 2)}});
  EXPECT_EQ(c.Q, PolyMatrix{{s}});
}

TEST(DrivingPoint, ResistorNeedsNoStateStage) {
  AssembledEquations eq = assemble_equations(parse_netlist("PORT p a b\nR r a b 5\n"));
  EXPECT_EQ(eq.state_count, 0);
  KernelRep k = eliminate_internal(eq);
  ASSERT_EQ(k.R.rows(), 1);
  EXPECT_TRUE(same_rowspan(k.R.coefficient(0), qmatrix_from_rows({{5, -1}})));
}

TEST(DrivingPoint, TransformerPairIsIdealTransformer) {
  Behavior b = driving_point_behavior(parse_netlist(testing::kTransformerPairNetlist));
  EXPECT_EQ(b.R().degree(), 0);
  EXPECT_TRUE(same_rowspan(b.R().coefficient(0), qmatrix_from_rows({{1, 1, 0, 0}, {0, 0, 1, -1}})));
}

TEST(DrivingPoint, GyratorBehavior) {
  Behavior g = driving_point_behavior(parse_netlist("G g a b c d\nPORT p1 a b\nPORT p2 c d\n"));
  // v1 = -i2 and v2 = i1.
  EXPECT_TRUE(same_rowspan(g.R().coefficient(0), qmatrix_from_rows({{0, 1, 1, 0}, {-1, 0, 0, 1}})));
  EXPECT_FALSE(is_reciprocal(g));
  EXPECT_TRUE(is_lossless(g));
}

TEST(DrivingPoint, NeedsPort) {
  EXPECT_EQ(kind_of([] { driving_point_behavior(parse_netlist("R r a b 1\nR q a b 2\n")); }),
            ErrorKind::kInvalidArgument);
}

TEST(Elimination, SingleStageAgreesWithTwoStage) {
  for (const auto& item : testing::circuit_catalog()) {
    Circuit c = parse_netlist(item.text);
    EliminationChain chain = eliminate_chain(c);
    KernelRep single = eliminate_single_stage(chain.assembled);
    for (const Rational& x : sample_points())
      EXPECT_TRUE(same_rowspan(eval_exact(single.R, x), eval_exact(chain.external.R, x))) << item.name;
  }
}

TEST(Elimination, ElementOrderInvariance) {
  for (const auto& item : testing::circuit_catalog()) {
    std::vector<std::string> lines;
    std::istringstream in(item.text);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    std::reverse(lines.begin(), lines.end());
    std::string reversed;
    for (const auto& l : lines) reversed += l + "\n";
    Behavior a = driving_point_behavior(parse_netlist(item.text));
    Behavior b = driving_point_behavior(parse_netlist(reversed));
    // Reversal also reverses port order; compare with ports permuted back.
    const int n = a.size();
    std::vector<int> perm;
    for (int k = 0; k < 2 * n; ++k) perm.push_back(k < n ? n - 1 - k : 3 * n - 1 - k);
    PolyMatrix rb = b.R().select_cols(perm);
    for (const Rational& x : sample_points())
      EXPECT_TRUE(same_rowspan(eval_exact(a.R(), x), eval_exact(rb, x))) << item.name;
  }
}

TEST(StateExtraction, RcMatchesHandDerivation) {
  StateSpace ss = extract_iso(parse_netlist(testing::kRcNetlist));
  EXPECT_EQ(ss.A, qmatrix_from_rows({{-1, 0}, {0, -1}}));
  EXPECT_EQ(ss.B, qmatrix_from_rows({{1}, {1}}));
  EXPECT_EQ(ss.C, qmatrix_from_rows({{1, 1}}));
  EXPECT_EQ(ss.D, qmatrix_from_rows({{0}}));
  EXPECT_FALSE(pbh_controllable(ss));
  EXPECT_FALSE(pbh_observable(ss));
  EXPECT_TRUE(check_internally_reciprocal(ss));
}

TEST(StateExtraction, DarlingtonIsNeitherControllableNorObservable) {
  StateSpace ss = extract_iso(parse_netlist(testing::kDarlingtonNetlist));
  EXPECT_EQ(ss.states(), 4);
  EXPECT_FALSE(pbh_controllable(ss));
  EXPECT_FALSE(pbh_observable(ss));
}

TEST(StateExtraction, TopologyErrors) {
  EXPECT_EQ(kind_of([] { extract_iso(parse_netlist("PORT p a b\nC c1 a b 1\nC c2 a b 2\n")); }),
            ErrorKind::kCapacitorLoop);
  EXPECT_EQ(kind_of([] { extract_iso(parse_netlist("PORT p a g\nL l1 a b 1\nL l2 b g 2\nR r a g 1\n")); }),
            ErrorKind::kInductorCutset);
}

TEST(StateExtraction, MarkovParametersMatchDrivingPoint) {
  for (const auto& item : testing::circuit_catalog()) {
    Circuit c = parse_netlist(item.text);
    StateSpace ss;
    try {
      ss = extract_iso(c);
    } catch (const Error&) {
      continue;
    }
    Behavior b = driving_point_behavior(c);
    std::vector<bool> current;
    for (int k = 0; k < ss.ports(); ++k) current.push_back((*ss.sigma_e)(k, k) == 1);
    IoPartition part = make_io_partition(b, current);
    auto a = markov_parameters(ss, 6);
    auto m = markov_parameters(part.Q_hat, part.P_hat, 6);
    for (int j = 0; j < 6; ++j) EXPECT_EQ(a[j], m[j]) << item.name << " index " << j;
    EXPECT_EQ(ss.states(), c.inductor_count() + c.capacitor_count()) << item.name;
  }
}

TEST(Catalog, PassiveAndReciprocalWhereExpected) {
  for (const auto& item : testing::circuit_catalog()) {
    Behavior b = driving_point_behavior(parse_netlist(item.text));
    EXPECT_TRUE(is_passive(b).verdict) << item.name;
    if (!item.has_gyrator) EXPECT_TRUE(is_reciprocal(b)) << item.name;
  }
}

TEST(Catalog, ElementCountsRespectInertiaBounds) {
  for (const auto& item : testing::circuit_catalog()) {
    if (item.has_gyrator) continue;
    Circuit c = parse_netlist(item.text);
    InertiaBounds ib = inertia_bounds(driving_point_behavior(c));
    EXPECT_GE(c.capacitor_count(), ib.capacitor_lower) << item.name;
    EXPECT_GE(c.inductor_count(), ib.inductor_lower) << item.name;
  }
}

}  // namespace
}  // namespace passnet
