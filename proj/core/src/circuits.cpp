// SPDX-License-Identifier: Apache-2.0
#include "passnet/circuits.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace passnet {

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  throw Error(ErrorKind::kParseError, msg, line);
}

Rational parse_value(const std::string& tok, int line) {
  try {
    return parse_rational(tok);
  } catch (const Error&) {
    parse_fail(line, "bad number '" + tok + "'");
  }
}

int parse_count(const std::string& tok, int line) {
  Rational q = parse_value(tok, line);
  if (q.get_den() != 1 || q < 1 || q > 64) parse_fail(line, "bad port count '" + tok + "'");
  return static_cast<int>(q.get_num().get_si());
}

Rational positive(Rational v, const std::string& name, int line) {
  if (sgn(v) <= 0)
    throw Error(ErrorKind::kNonPositiveParameter, "element '" + name + "' needs a positive value",
                line);
  return v;
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }
  int components() {
    int c = 0;
    for (int i = 0; i < static_cast<int>(parent_.size()); ++i) c += find(i) == i;
    return c;
  }

 private:
  std::vector<int> parent_;
};

enum class EdgeOwner { kPort, kElement };

struct Edge {
  int plus = 0;
  int minus = 0;
  EdgeOwner owner = EdgeOwner::kPort;
  int index = 0;  // port or element index
  int jcol = 0;   // column of the edge current (or the port current)
  int ucol = 0;
  int jsign = 1;  // a port edge carries j = -i
};

/// Graph and variable layout shared by assembly and the topology checks.
struct Layout {
  std::map<std::string, int> node_index;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> element_edges;
  std::vector<int> states;  // element indices, inductors then capacitors
  int nw = 0;
  int nl = 0;
  std::vector<std::string> w_labels;
  std::vector<std::string> l_labels;
};

std::string edge_suffix(const Element& e, int k) {
  return e.edge_count() == 1 ? e.name : e.name + "." + std::to_string(k + 1);
}

int node_id(Layout& lay, const std::string& name) {
  auto [it, inserted] = lay.node_index.emplace(name, static_cast<int>(lay.node_index.size()));
  return it->second;
}

Layout make_layout(const Circuit& c) {
  Layout lay;
  const int n = static_cast<int>(c.ports.size());
  for (int k = 0; k < static_cast<int>(c.elements.size()); ++k)
    if (c.elements[k].kind == ElementKind::kInductor) lay.states.push_back(k);
  for (int k = 0; k < static_cast<int>(c.elements.size()); ++k)
    if (c.elements[k].kind == ElementKind::kCapacitor) lay.states.push_back(k);
  const int nx = static_cast<int>(lay.states.size());

  for (int e : lay.states) {
    const Element& el = c.elements[e];
    lay.w_labels.push_back((el.kind == ElementKind::kInductor ? "i_" : "v_") + el.name);
  }
  for (const Port& p : c.ports) lay.w_labels.push_back("i_" + p.name);
  for (const Port& p : c.ports) lay.w_labels.push_back("v_" + p.name);
  lay.nw = nx + 2 * n;

  for (int k = 0; k < n; ++k) {
    Edge ed;
    ed.plus = node_id(lay, c.ports[k].plus);
    ed.minus = node_id(lay, c.ports[k].minus);
    ed.owner = EdgeOwner::kPort;
    ed.index = k;
    ed.jcol = nx + k;
    ed.ucol = nx + n + k;
    ed.jsign = -1;
    lay.edges.push_back(ed);
  }

  // Reactive complements first, in state order, then other elements.
  std::vector<int> state_pos(c.elements.size(), -1);
  for (int s = 0; s < nx; ++s) state_pos[lay.states[s]] = s;
  int next_l = lay.nw;
  for (int e : lay.states) {
    const Element& el = c.elements[e];
    lay.l_labels.push_back((el.kind == ElementKind::kInductor ? "v_" : "i_") + el.name);
  }
  next_l += nx;

  lay.element_edges.resize(c.elements.size());
  for (int k = 0; k < static_cast<int>(c.elements.size()); ++k) {
    const Element& el = c.elements[k];
    const int ne = el.edge_count();
    int jbase = 0;
    int ubase = 0;
    if (el.reactive()) {
      const int s = state_pos[k];
      const bool ind = el.kind == ElementKind::kInductor;
      jbase = ind ? s : lay.nw + s;
      ubase = ind ? lay.nw + s : s;
    } else {
      jbase = next_l;
      ubase = next_l + ne;
      next_l += 2 * ne;
      for (int q = 0; q < ne; ++q) lay.l_labels.push_back("i_" + edge_suffix(el, q));
      for (int q = 0; q < ne; ++q) lay.l_labels.push_back("v_" + edge_suffix(el, q));
    }
    for (int q = 0; q < ne; ++q) {
      Edge ed;
      ed.plus = node_id(lay, el.terminals[2 * q]);
      ed.minus = node_id(lay, el.terminals[2 * q + 1]);
      ed.owner = EdgeOwner::kElement;
      ed.index = k;
      ed.jcol = jbase + q;
      ed.ucol = ubase + q;
      lay.element_edges[k].push_back(static_cast<int>(lay.edges.size()));
      lay.edges.push_back(ed);
    }
  }
  lay.nl = next_l - lay.nw;
  return lay;
}

QMatrix incidence(const Layout& lay) {
  QMatrix A(static_cast<int>(lay.node_index.size()), static_cast<int>(lay.edges.size()));
  for (int e = 0; e < static_cast<int>(lay.edges.size()); ++e) {
    A(lay.edges[e].plus, e) += 1;
    A(lay.edges[e].minus, e) -= 1;
  }
  return A;
}

/// Keeps a row basis of R (over the rational functions), dropping zero rows.
PolyMatrix independent_rows(const PolyMatrix& R) {
  std::vector<int> keep;
  for (int i = 0; i < R.rows(); ++i) {
    bool zero = true;
    for (int j = 0; j < R.cols() && zero; ++j) zero = R(i, j).is_zero();
    if (!zero) keep.push_back(i);
  }
  PolyMatrix out = R.select_rows(keep);
  if (normal_rank(out) == out.rows()) return out;
  RowEchelon ech = row_echelon(out);
  std::vector<int> top(ech.rank);
  std::iota(top.begin(), top.end(), 0);
  return row_reduce(ech.T.select_rows(top));
}

KernelRep eliminate(const PolyMatrix& R1, const PolyMatrix& R2, std::vector<std::string> labels) {
  PolyMatrix R = R2.cols() == 0 ? R1 : left_syzygy_basis(R2) * R1;
  return make_kernel_rep(independent_rows(R), std::move(labels));
}

std::vector<int> range(int from, int to) {
  std::vector<int> v;
  for (int k = from; k < to; ++k) v.push_back(k);
  return v;
}

void check_topology(const Circuit& c, const Layout& lay) {
  const int nn = static_cast<int>(lay.node_index.size());
  UnionFind caps(nn);
  for (const Edge& ed : lay.edges)
    if (ed.owner == EdgeOwner::kElement && c.elements[ed.index].kind == ElementKind::kCapacitor &&
        !caps.unite(ed.plus, ed.minus))
      throw Error(ErrorKind::kCapacitorLoop,
                  "capacitor '" + c.elements[ed.index].name + "' closes a loop of capacitors");
  UnionFind full(nn);
  UnionFind rest(nn);
  for (const Edge& ed : lay.edges) {
    full.unite(ed.plus, ed.minus);
    if (ed.owner == EdgeOwner::kPort || c.elements[ed.index].kind != ElementKind::kInductor)
      rest.unite(ed.plus, ed.minus);
  }
  if (rest.components() > full.components())
    throw Error(ErrorKind::kInductorCutset, "the circuit has a cut-set made of inductors only");
}

}  // namespace

int Circuit::inductor_count() const {
  return static_cast<int>(std::count_if(elements.begin(), elements.end(), [](const Element& e) {
    return e.kind == ElementKind::kInductor;
  }));
}

int Circuit::capacitor_count() const {
  return static_cast<int>(std::count_if(elements.begin(), elements.end(), [](const Element& e) {
    return e.kind == ElementKind::kCapacitor;
  }));
}

bool Circuit::has_gyrator() const {
  return std::any_of(elements.begin(), elements.end(),
                     [](const Element& e) { return e.kind == ElementKind::kGyrator; });
}

Circuit parse_netlist(std::string_view text) {
  Circuit c;
  std::set<std::string> seen_nodes;
  auto note_nodes = [&](const std::vector<std::string>& ids) {
    for (const auto& id : ids)
      if (seen_nodes.insert(id).second) c.nodes.push_back(id);
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    const std::string kw = upper(tok[0]);
    auto arity = [&](std::size_t n) {
      if (tok.size() != n)
        parse_fail(line, kw + " expects " + std::to_string(n - 1) + " fields, got " +
                             std::to_string(tok.size() - 1));
    };

    if (kw == "PORT") {
      arity(4);
      c.ports.push_back({tok[1], tok[2], tok[3], line});
      note_nodes({tok[2], tok[3]});
      continue;
    }

    Element el;
    el.line = line;
    if (kw == "R" || kw == "L" || kw == "C" || kw == "DAMPER" || kw == "SPRING" || kw == "INERTER") {
      arity(5);
      el.name = tok[1];
      el.terminals = {tok[2], tok[3]};
      Rational v = positive(parse_value(tok[4], line), el.name, line);
      if (kw == "R" || kw == "DAMPER") el.kind = ElementKind::kResistor;
      if (kw == "L" || kw == "SPRING") el.kind = ElementKind::kInductor;
      if (kw == "C" || kw == "INERTER") el.kind = ElementKind::kCapacitor;
      el.value = (kw == "DAMPER" || kw == "SPRING") ? Rational(1 / v) : v;
    } else if (kw == "T") {
      if (tok.size() < 4) parse_fail(line, "T expects <name> <m> <n> ...");
      const int m = parse_count(tok[2], line);
      const int n = parse_count(tok[3], line);
      arity(4 + 2 * (m + n) + m * n);
      el.kind = ElementKind::kTransformer;
      el.name = tok[1];
      el.terminals.assign(tok.begin() + 4, tok.begin() + 4 + 2 * (m + n));
      el.turns = QMatrix(m, n);
      for (int r = 0; r < m; ++r)
        for (int k = 0; k < n; ++k) el.turns(r, k) = parse_value(tok[4 + 2 * (m + n) + r * n + k], line);
    } else if (kw == "LEVER") {
      arity(7);
      el.kind = ElementKind::kTransformer;
      el.name = tok[1];
      el.terminals = {tok[2], tok[3], tok[4], tok[5]};
      el.turns = QMatrix(1, 1);
      el.turns(0, 0) = parse_value(tok[6], line);
    } else if (kw == "G") {
      arity(6);
      el.kind = ElementKind::kGyrator;
      el.name = tok[1];
      el.terminals = {tok[2], tok[3], tok[4], tok[5]};
    } else {
      parse_fail(line, "unknown element '" + tok[0] + "'");
    }
    note_nodes(el.terminals);
    c.elements.push_back(std::move(el));
  }
  if (c.elements.empty() && c.ports.empty()) parse_fail(line, "netlist is empty");
  validate(c);
  return c;
}

void validate(const Circuit& c) {
  std::set<std::string> names;
  auto unique = [&](const std::string& name, int line) {
    if (name.empty()) parse_fail(line, "missing name");
    if (!names.insert(name).second) parse_fail(line, "duplicate name '" + name + "'");
  };
  std::map<std::string, int> terminal_count;
  std::map<std::string, int> first_line;
  auto touch = [&](const std::string& node, int line) {
    ++terminal_count[node];
    first_line.emplace(node, line);
  };
  for (const Port& p : c.ports) {
    unique(p.name, p.line);
    touch(p.plus, p.line);
    touch(p.minus, p.line);
  }
  for (const Element& e : c.elements) {
    unique(e.name, e.line);
    switch (e.kind) {
      case ElementKind::kResistor:
      case ElementKind::kInductor:
      case ElementKind::kCapacitor:
        if (e.terminals.size() != 2) parse_fail(e.line, "'" + e.name + "' needs two terminals");
        positive(e.value, e.name, e.line);
        break;
      case ElementKind::kTransformer:
        if (e.turns.rows() < 1 || e.turns.cols() < 1 ||
            static_cast<int>(e.terminals.size()) != 2 * (e.turns.rows() + e.turns.cols()))
          parse_fail(e.line, "'" + e.name + "' terminals do not match the turns matrix");
        break;
      case ElementKind::kGyrator:
        if (e.terminals.size() != 4) parse_fail(e.line, "'" + e.name + "' needs four terminals");
        break;
    }
    for (const auto& t : e.terminals) touch(t, e.line);
  }
  for (const auto& [node, count] : terminal_count)
    if (count == 1)
      throw Error(ErrorKind::kDanglingNode, "node '" + node + "' has a single connection",
                  first_line[node]);
}

AssembledEquations assemble_equations(const Circuit& c) {
  validate(c);
  const Layout lay = make_layout(c);
  const int cols = lay.nw + lay.nl;
  std::vector<std::vector<RatPoly>> rows;
  auto new_row = [&]() -> std::vector<RatPoly>& { return rows.emplace_back(cols); };
  const RatPoly s = RatPoly::s();

  for (int k = 0; k < static_cast<int>(c.elements.size()); ++k) {
    const Element& el = c.elements[k];
    const std::vector<int>& ed = lay.element_edges[k];
    switch (el.kind) {
      case ElementKind::kResistor: {
        auto& r = new_row();
        r[lay.edges[ed[0]].ucol] = 1;
        r[lay.edges[ed[0]].jcol] = RatPoly(Rational(-el.value));
        break;
      }
      case ElementKind::kInductor: {
        auto& r = new_row();
        r[lay.edges[ed[0]].jcol] = el.value * s;
        r[lay.edges[ed[0]].ucol] = -1;
        break;
      }
      case ElementKind::kCapacitor: {
        auto& r = new_row();
        r[lay.edges[ed[0]].ucol] = el.value * s;
        r[lay.edges[ed[0]].jcol] = -1;
        break;
      }
      case ElementKind::kTransformer: {
        const int m = el.turns.rows();
        const int n = el.turns.cols();
        for (int q = 0; q < n; ++q) {
          auto& r = new_row();
          r[lay.edges[ed[q]].ucol] = 1;
          for (int p = 0; p < m; ++p) r[lay.edges[ed[n + p]].ucol] = RatPoly(Rational(-el.turns(p, q)));
        }
        for (int p = 0; p < m; ++p) {
          auto& r = new_row();
          r[lay.edges[ed[n + p]].jcol] = 1;
          for (int q = 0; q < n; ++q) r[lay.edges[ed[q]].jcol] = RatPoly(el.turns(p, q));
        }
        break;
      }
      case ElementKind::kGyrator: {
        auto& r1 = new_row();
        r1[lay.edges[ed[0]].ucol] = 1;
        r1[lay.edges[ed[1]].jcol] = 1;
        auto& r2 = new_row();
        r2[lay.edges[ed[1]].ucol] = 1;
        r2[lay.edges[ed[0]].jcol] = -1;
        break;
      }
    }
  }
  const int element_rows = static_cast<int>(rows.size());

  // Fundamental loops and cut-sets of the forest picked by the rref pivots.
  QMatrix A = incidence(lay);
  QMatrix loops = transpose(nullspace(A));
  for (int i = 0; i < loops.rows(); ++i) {
    auto& r = new_row();
    for (int e = 0; e < loops.cols(); ++e)
      if (!is_zero(loops(i, e))) r[lay.edges[e].ucol] = RatPoly(loops(i, e));
  }
  const int kvl_rows = loops.rows();
  QMatrix cuts = A;
  const int rank_a = static_cast<int>(rref_in_place(cuts).size());
  for (int i = 0; i < rank_a; ++i) {
    auto& r = new_row();
    for (int e = 0; e < cuts.cols(); ++e)
      if (!is_zero(cuts(i, e))) r[lay.edges[e].jcol] = RatPoly(Rational(lay.edges[e].jsign * cuts(i, e)));
  }

  PolyMatrix K(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < K.rows(); ++i)
    for (int j = 0; j < cols; ++j) K(i, j) = rows[i][j];

  AssembledEquations eq;
  eq.R1 = K.select_cols(range(0, lay.nw));
  eq.R2 = -K.select_cols(range(lay.nw, cols));
  eq.w_labels = lay.w_labels;
  eq.l_labels = lay.l_labels;
  eq.state_count = static_cast<int>(lay.states.size());
  eq.port_count = static_cast<int>(c.ports.size());
  eq.kcl_rows = rank_a;
  eq.kvl_rows = kvl_rows;
  eq.element_rows = element_rows;
  return eq;
}

KernelRep eliminate_internal(const AssembledEquations& eq) {
  return eliminate(eq.R1, eq.R2, eq.w_labels);
}

KernelRep eliminate_single_stage(const AssembledEquations& eq) {
  const int nx = eq.state_count;
  const int nw = eq.R1.cols();
  PolyMatrix R1 = eq.R1.select_cols(range(nx, nw));
  PolyMatrix R2 = hstack(-eq.R1.select_cols(range(0, nx)), eq.R2);
  return eliminate(R1, R2, std::vector<std::string>(eq.w_labels.begin() + nx, eq.w_labels.end()));
}

Behavior behavior_from_port_kernel(const KernelRep& k, const std::vector<std::string>& ports) {
  const int n = static_cast<int>(ports.size());
  if (k.R.rows() != n || k.R.cols() != 2 * n)
    throw Error(ErrorKind::kShapeMismatch, "port kernel must be n x 2n with n = port count, got " +
                                               std::to_string(k.R.rows()) + " x " +
                                               std::to_string(k.R.cols()));
  PolyMatrix M = k.R;
  for (int j = n; j < 2 * n; ++j)
    for (int i = 0; i < n; ++i) M(i, j) = -M(i, j);
  M = row_reduce(M);
  for (int i = 0; i < n; ++i) {
    int best = -1;
    for (int j = 0; j < 2 * n; ++j)
      if (best < 0 || M(i, j).degree() > M(i, best).degree()) best = j;
    const Rational scale = 1 / M(i, best).leading();
    for (int j = 0; j < 2 * n; ++j) M(i, j) = M(i, j) * scale;
  }
  return behavior_from_pq(M.select_cols(range(0, n)), M.select_cols(range(n, 2 * n)), ports);
}

EliminationChain eliminate_chain(const Circuit& c) {
  if (c.ports.empty())
    throw Error(ErrorKind::kInvalidArgument, "driving-point analysis needs at least one port");
  EliminationChain chain;
  chain.assembled = assemble_equations(c);
  chain.internal = eliminate_internal(chain.assembled);
  const int nx = chain.assembled.state_count;
  const int nw = chain.internal.R.cols();
  const PolyMatrix& R = chain.internal.R;
  chain.external = eliminate(R.select_cols(range(nx, nw)), -R.select_cols(range(0, nx)),
                             std::vector<std::string>(chain.internal.labels.begin() + nx,
                                                      chain.internal.labels.end()));
  std::vector<std::string> ports;
  for (const Port& p : c.ports) ports.push_back(p.name);
  chain.behavior = behavior_from_port_kernel(chain.external, ports);
  return chain;
}

Behavior driving_point_behavior(const Circuit& c) { return eliminate_chain(c).behavior; }

StateSpace extract_iso(const Circuit& c) {
  if (c.ports.empty())
    throw Error(ErrorKind::kInvalidArgument, "state extraction needs at least one port");
  validate(c);
  check_topology(c, make_layout(c));

  const AssembledEquations eq = assemble_equations(c);
  const KernelRep k = eliminate_internal(eq);
  const int nx = eq.state_count;
  const int n = eq.port_count;
  const int r = k.R.rows();
  if (k.R.degree() > 1 || k.R.select_cols(range(nx, nx + 2 * n)).degree() > 0)
    throw Error(ErrorKind::kDependentStates, "port variables enter the state equations dynamically");

  QMatrix E = k.R.select_cols(range(0, nx)).coefficient(1);
  if (rank(E) < nx)
    throw Error(ErrorKind::kDependentStates, "inductor currents and capacitor voltages are dependent");
  if (r - nx != n)
    throw Error(ErrorKind::kDependentStates, "algebraic constraints do not match the port count");

  QMatrix aug = hstack(E, QMatrix::identity(r));
  rref_in_place(aug);
  const QMatrix T = aug.block(0, nx, r, r);
  const QMatrix F = T * k.R.coefficient(0);
  const QMatrix F1 = F.block(0, 0, nx, nx);
  const QMatrix G1 = F.block(0, nx, nx, 2 * n);
  const QMatrix F2 = F.block(nx, 0, n, nx);
  const QMatrix G2 = F.block(nx, nx, n, 2 * n);

  for (const auto& current : partition_search_order(n)) {
    QMatrix G2u(n, n), G2y(n, n), G1u(nx, n), G1y(nx, n);
    for (int p = 0; p < n; ++p) {
      const int ucol = current[p] ? p : n + p;
      const int ycol = current[p] ? n + p : p;
      for (int i = 0; i < n; ++i) {
        G2u(i, p) = G2(i, ucol);
        G2y(i, p) = G2(i, ycol);
      }
      for (int i = 0; i < nx; ++i) {
        G1u(i, p) = G1(i, ucol);
        G1y(i, p) = G1(i, ycol);
      }
    }
    if (rank(G2y) < n) continue;
    const QMatrix Yinv = inverse(G2y);
    const QMatrix C = QMatrix(n, nx) - Yinv * F2;
    const QMatrix D = QMatrix(n, n) - Yinv * G2u;
    StateSpace ss;
    ss.A = QMatrix(nx, nx) - F1 - G1y * C;
    ss.B = QMatrix(nx, n) - G1u - G1y * D;
    ss.C = C;
    ss.D = D;
    QMatrix se(n, n), si(nx, nx);
    for (int p = 0; p < n; ++p) se(p, p) = current[p] ? 1 : -1;
    for (int i = 0; i < nx; ++i) si(i, i) = i < c.inductor_count() ? 1 : -1;
    ss.sigma_e = se;
    ss.sigma_i = si;
    validate(ss);
    return ss;
  }
  throw Error(ErrorKind::kNoPartition, "no port input selection determines the outputs");
}

}  // namespace passnet
