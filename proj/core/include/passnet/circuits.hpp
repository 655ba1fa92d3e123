// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "passnet/behavior.hpp"
#include "passnet/matrix.hpp"
#include "passnet/polymatrix.hpp"
#include "passnet/statespace.hpp"

namespace passnet {

enum class ElementKind { kResistor, kInductor, kCapacitor, kTransformer, kGyrator };

/// One netlist element. Two-terminal elements have one (+, -) terminal pair;
/// transformers have n side-1 pairs followed by m side-2 pairs; gyrators two.
/// Edge law sign convention: v j is the power flowing into the element,
/// with v = V(+) - V(-) and j the current entering at +.
struct Element {
  ElementKind kind = ElementKind::kResistor;
  std::string name;
  std::vector<std::string> terminals;
  /// Resistance, inductance or capacitance.
  Rational value;
  /// Transformer turns matrix (m x n): v1 = T^T v2, i2 = -T i1.
  QMatrix turns;
  int line = 0;

  int edge_count() const { return static_cast<int>(terminals.size()) / 2; }
  bool reactive() const { return kind == ElementKind::kInductor || kind == ElementKind::kCapacitor; }
};

/// External port. Its current i enters the circuit at `plus`, so v i is the
/// power delivered to the circuit.
struct Port {
  std::string name;
  std::string plus;
  std::string minus;
  int line = 0;
};

struct Circuit {
  std::vector<std::string> nodes;
  std::vector<Element> elements;
  std::vector<Port> ports;

  int inductor_count() const;
  int capacitor_count() const;
  bool has_gyrator() const;
};

/// Netlist grammar, one statement per line, '#' starts a comment:
///   R|L|C <name> <n+> <n-> <value>
///   T <name> <m> <n> <2(n+m) node ids> <m*n turns, row-major>
///   G <name> <n1+> <n1-> <n2+> <n2->
///   PORT <name> <n+> <n->
///   DAMPER <name> <n+> <n-> <c>      resistor with R = 1/c
///   SPRING <name> <n+> <n-> <k>      inductor with L = 1/k
///   INERTER <name> <n+> <n-> <b>     capacitor with C = b
///   LEVER <name> <n1+> <n1-> <n2+> <n2-> <ratio>   1x1 transformer
/// Values are integers, decimals or p/q fractions.
Circuit parse_netlist(std::string_view text);

/// Throws DanglingNode for a node touched by a single terminal, ParseError for
/// duplicate names or malformed elements, NonPositiveParameter for R, L, C <= 0.
void validate(const Circuit& c);

/// R1(d/dt) w = R2(d/dt) l assembled from KCL, KVL and element laws.
/// w holds the reactive states (inductor currents, then capacitor voltages)
/// followed by the port currents and the port voltages; l holds every other
/// element current and voltage.
struct AssembledEquations {
  PolyMatrix R1;
  PolyMatrix R2;
  std::vector<std::string> w_labels;
  std::vector<std::string> l_labels;
  int state_count = 0;
  int port_count = 0;
  int kcl_rows = 0;
  int kvl_rows = 0;
  int element_rows = 0;
  bool properly_eliminable = true;

  int equations() const { return R1.rows(); }
  int unknowns() const { return R1.cols() + R2.cols(); }
};

AssembledEquations assemble_equations(const Circuit& c);

/// R = N R1 with N a minimal left syzygy basis of R2; zero and dependent rows removed.
KernelRep eliminate_internal(const AssembledEquations& eq);

/// Eliminates the internal variables and the states in one syzygy step.
KernelRep eliminate_single_stage(const AssembledEquations& eq);

/// The two elimination stages and the resulting port behavior.
struct EliminationChain {
  AssembledEquations assembled;
  KernelRep internal;
  KernelRep external;
  Behavior behavior;
};

EliminationChain eliminate_chain(const Circuit& c);

/// Requires at least one port. Rows are row reduced and scaled so that the first
/// entry of maximal degree in each row of [P, Q] is monic.
Behavior driving_point_behavior(const Circuit& c);

/// Splits a kernel representation on (i, v) into the normalized (P, Q) pair.
Behavior behavior_from_port_kernel(const KernelRep& k, const std::vector<std::string>& ports);

/// State space with x = (inductor currents, capacitor voltages). The input
/// selection follows find_io_partition's order. sigma_i is +1 on inductor
/// currents and -1 on capacitor voltages.
StateSpace extract_iso(const Circuit& c);

}  // namespace passnet
