// SPDX-License-Identifier: Apache-2.0
#include "passnet/serialize.hpp"

#include <json.hpp>

#include <sstream>

namespace passnet {

using nlohmann::json;

namespace {

json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json poly_json(const PolyMatrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

json q_json(const QMatrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

json eigen_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

json roots_json(const RootSet& r) {
  json roots = json::array();
  for (const Root& x : r.roots) {
    json e = complex_json(x.value);
    e["multiplicity"] = x.multiplicity;
    roots.push_back(std::move(e));
  }
  return {{"polynomial", to_string(r.source)}, {"roots", roots}};
}

json inertia_json(const Inertia& in) { return {{"pos", in.pos}, {"neg", in.neg}, {"zero", in.zero}}; }

json cond_json(const PassivityReport& r) {
  json c1 = {{"holds", r.cond1.holds},
             {"interior_checked", r.cond1.interior_checked},
             {"infinity_failed", r.cond1.infinity_failed}};
  if (r.cond1.omega) c1["omega"] = to_string(*r.cond1.omega);
  if (!r.cond1.minor_indices.empty()) c1["minor_indices"] = r.cond1.minor_indices;
  if (r.cond1.omega_interval)
    c1["omega_interval"] = {r.cond1.omega_interval->first, r.cond1.omega_interval->second};
  if (r.cond1.interior_point) c1["interior_point"] = complex_json(*r.cond1.interior_point);
  json c2 = {{"holds", r.cond2.holds}};
  if (r.cond2.witness) c2["witness"] = complex_json(*r.cond2.witness);
  json c3 = {{"holds", r.cond3.holds}};
  if (r.cond3.lambda) {
    c3["lambda"] = complex_json(*r.cond3.lambda);
    json p = json::array();
    for (int k = 0; k < r.cond3.p.size(); ++k) p.push_back(complex_json(r.cond3.p(k)));
    c3["p"] = std::move(p);
  }
  return {{"passive", r.verdict},
          {"condition1", c1},
          {"condition2", c2},
          {"condition3", c3},
          {"warnings", r.warnings}};
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorKind::kParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  throw Error(ErrorKind::kParseError, "matrix entries must be strings or numbers");
}

template <typename Entry, typename Parse>
std::vector<std::vector<Entry>> grid(const json& j, const char* what, Parse parse) {
  if (!j.is_array()) throw Error(ErrorKind::kParseError, std::string(what) + " must be an array of rows");
  std::vector<std::vector<Entry>> rows;
  for (const json& row : j) {
    if (!row.is_array()) throw Error(ErrorKind::kParseError, std::string(what) + " rows must be arrays");
    auto& out = rows.emplace_back();
    for (const json& v : row) out.push_back(parse(scalar_text(v)));
    if (out.size() != rows.front().size())
      throw Error(ErrorKind::kShapeMismatch, std::string(what) + " rows differ in length");
  }
  return rows;
}

PolyMatrix poly_from(const json& j, const char* what) {
  auto rows = grid<RatPoly>(j, what, [](const std::string& s) { return parse_poly(s); });
  PolyMatrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int k = 0; k < m.cols(); ++k) m(i, k) = rows[i][k];
  return m;
}

QMatrix q_from(const json& j, const char* what, int rows_hint, int cols_hint) {
  auto rows = grid<Rational>(j, what, [](const std::string& s) { return parse_rational(s); });
  if (rows.empty()) return QMatrix(rows_hint < 0 ? 0 : rows_hint, cols_hint < 0 ? 0 : cols_hint);
  QMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int k = 0; k < m.cols(); ++k) m(i, k) = rows[i][k];
  return m;
}

Eigen::VectorXd vector_from(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorKind::kParseError, std::string(what) + " must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) throw Error(ErrorKind::kParseError, std::string(what) + " entries must be numbers");
    v(static_cast<Eigen::Index>(k)) = j[k].get<double>();
  }
  return v;
}

double number_or(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw Error(ErrorKind::kParseError, std::string(key) + " must be a number");
  return j.at(key).get<double>();
}

}  // namespace

std::string to_json(const PolyMatrix& m) { return poly_json(m).dump(); }
std::string to_json(const QMatrix& m) { return q_json(m).dump(); }

std::string to_json(const Behavior& b) {
  return json{{"P", poly_json(b.P)}, {"Q", poly_json(b.Q)}, {"ports", b.ports}}.dump();
}

std::string to_json(const KernelRep& k) {
  return json{{"R", poly_json(k.R)}, {"labels", k.labels}}.dump();
}

std::string to_json(const AssembledEquations& eq) {
  return json{{"R1", poly_json(eq.R1)},
              {"R2", poly_json(eq.R2)},
              {"w", eq.w_labels},
              {"l", eq.l_labels},
              {"equations", eq.equations()},
              {"unknowns", eq.unknowns()},
              {"kcl_rows", eq.kcl_rows},
              {"kvl_rows", eq.kvl_rows},
              {"element_rows", eq.element_rows},
              {"properly_eliminable", eq.properly_eliminable}}
      .dump();
}

std::string to_json(const StateSpace& ss) {
  json j = {{"A", q_json(ss.A)}, {"B", q_json(ss.B)}, {"C", q_json(ss.C)}, {"D", q_json(ss.D)}};
  if (ss.sigma_i) j["sigma_i"] = q_json(*ss.sigma_i);
  if (ss.sigma_e) j["sigma_e"] = q_json(*ss.sigma_e);
  return j.dump();
}

std::string to_json(const RootSet& r) { return roots_json(r).dump(); }

std::string to_json(const Controllability& c) {
  return json{{"controllable", c.controllable}, {"uncontrollable_modes", roots_json(c.uncontrollable_modes)}}
      .dump();
}

std::string to_json(const PassivityReport& r) { return cond_json(r).dump(); }

std::string to_json(const InertiaBounds& b) {
  return json{{"pos_eigs", b.pos_eigs},
              {"neg_eigs", b.neg_eigs},
              {"uncontrollable_modes", b.uncontrollable_modes},
              {"even_parity_lower", b.even_parity_lower},
              {"odd_parity_lower", b.odd_parity_lower},
              {"capacitor_lower", b.capacitor_lower},
              {"inductor_lower", b.inductor_lower}}
      .dump();
}

std::string to_json(const Bezoutian& b) {
  return json{{"entries", q_json(b.entries)},
              {"degree", b.degree},
              {"ports", b.ports},
              {"inertia", inertia_json(inertia(b.entries))}}
      .dump();
}

std::string to_json(const StorageCertificate& c) {
  json spectrum = json::array();
  for (auto z : c.closed_loop_spectrum) spectrum.push_back(complex_json(z));
  return json{{"kind", c.kind == CertificateKind::kStabilizingAre ? "stabilizing_are" : "lmi_feasible"},
              {"X", eigen_json(c.X)},
              {"closed_loop_spectrum", spectrum},
              {"residual", c.residual}}
      .dump();
}

std::string to_json(const SpectralCheck& c) {
  json j = {{"ok", c.ok},
            {"max_relative_error", c.max_relative_error},
            {"rhp_poles_hidden", c.rhp_poles_hidden}};
  if (c.offending_point) j["offending_point"] = complex_json(*c.offending_point);
  return j.dump();
}

Behavior behavior_from_json(std::string_view text) {
  const json j = parse_text(text);
  PolyMatrix P = poly_from(field(j, "P"), "P");
  PolyMatrix Q = poly_from(field(j, "Q"), "Q");
  std::vector<std::string> ports;
  if (j.contains("ports")) {
    if (!j["ports"].is_array()) throw Error(ErrorKind::kParseError, "ports must be an array of names");
    for (const json& p : j["ports"]) {
      if (!p.is_string()) throw Error(ErrorKind::kParseError, "ports must be an array of names");
      ports.push_back(p.get<std::string>());
    }
  }
  return behavior_from_pq(std::move(P), std::move(Q), std::move(ports));
}

StateSpace state_space_from_json(std::string_view text) {
  const json j = parse_text(text);
  QMatrix D = q_from(field(j, "D"), "D", -1, -1);
  const int m = D.rows();
  QMatrix A = q_from(field(j, "A"), "A", 0, 0);
  const int n = A.rows();
  StateSpace ss;
  ss.A = std::move(A);
  ss.B = q_from(field(j, "B"), "B", n, m);
  ss.C = q_from(field(j, "C"), "C", m, n);
  ss.D = std::move(D);
  if (j.contains("sigma_i")) ss.sigma_i = q_from(j["sigma_i"], "sigma_i", n, n);
  if (j.contains("sigma_e")) ss.sigma_e = q_from(j["sigma_e"], "sigma_e", m, m);
  validate(ss);
  return ss;
}

SimulationSpec simulation_spec_from_json(std::string_view text, int ports, int states) {
  const json j = parse_text(text);
  const json& sig = field(j, "signal");
  const std::string kind = field(sig, "kind").is_string() ? sig["kind"].get<std::string>() : "";
  SimulationSpec spec;
  if (kind == "constant") {
    spec.input = Signal::constant(vector_from(field(sig, "value"), "value"));
  } else if (kind == "piecewise_constant") {
    std::vector<double> times;
    for (double t : vector_from(field(sig, "times"), "times")) times.push_back(t);
    std::vector<Eigen::VectorXd> values;
    const json& vs = field(sig, "values");
    if (!vs.is_array()) throw Error(ErrorKind::kParseError, "values must be an array");
    for (const json& v : vs) values.push_back(vector_from(v, "values"));
    spec.input = Signal::piecewise_constant(std::move(times), std::move(values));
  } else if (kind == "exponential") {
    spec.input = Signal::exponential(vector_from(field(sig, "value"), "value"), number_or(sig, "rate", 0.0));
  } else if (kind == "sinusoid") {
    spec.input = Signal::sinusoid(vector_from(field(sig, "value"), "value"), number_or(sig, "rate", 0.0),
                                  number_or(sig, "phase", 0.0));
  } else {
    throw Error(ErrorKind::kParseError, "signal kind must be constant, piecewise_constant, exponential or sinusoid");
  }
  if (spec.input.size() != ports)
    throw Error(ErrorKind::kShapeMismatch, "signal size differs from the port count");
  spec.x0 = j.contains("x0") ? vector_from(j["x0"], "x0") : Eigen::VectorXd::Zero(states);
  if (spec.x0.size() != states) throw Error(ErrorKind::kShapeMismatch, "x0 size differs from the state count");
  spec.t0 = number_or(j, "t0", 0.0);
  spec.t1 = number_or(j, "t1", 1.0);
  spec.dt = number_or(j, "dt", 1e-3);
  return spec;
}

}  // namespace passnet
