// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "passnet/circuits.hpp"
#include "passnet/dissipativity.hpp"
#include "passnet/serialize.hpp"
#include "passnet/simulate.hpp"

#ifndef PASSNET_VERSION
#define PASSNET_VERSION "0.0.0"
#endif

namespace passnet::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string verb;
  std::string input;
  std::string signal;
  bool json = false;
  double tol = kDefaultTol;
  std::string gamma = "1";
  bool no_interior = false;
  long seed = 0;  // accepted for compatibility; nothing is random
  bool passive = false;
  bool reciprocal = false;
  bool lossless = false;
  bool reversible = false;
  bool relaxation = false;
  bool rl_dual = false;
  bool bounded_real = false;
  bool controllable = false;
  bool stabilisable = false;
};

struct Report {
  json result = json::object();
  std::vector<std::string> verdicts;
  std::vector<std::string> certificates;
  std::vector<std::string> warnings;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string fnv1a(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParseError, std::string("invalid JSON: ") + e.what());
  }
}

/// Accepts a bare object, a report envelope, or a report result holding `key`.
std::string unwrap(const std::string& text, const char* key, const char* marker) {
  json j = parse(text);
  if (j.is_object() && j.contains("result") && j.contains("tool")) j = j["result"];
  if (j.is_object() && !j.contains(marker) && j.contains(key)) j = j[key];
  return j.dump();
}

Behavior load_behavior(const std::string& text) {
  return behavior_from_json(unwrap(text, "behavior", "P"));
}

StateSpace load_state_space(const std::string& text) {
  return state_space_from_json(unwrap(text, "state_space", "A"));
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string verdict_name(const PassivityReport& r, const CheckOptions& opts) {
  if (!r.verdict) return "not-passive";
  return opts.interior_sampling ? "passive" : "boundary-pass";
}

std::string complex_text(std::complex<double> z) {
  std::ostringstream os;
  os << std::setprecision(10) << z.real();
  if (z.imag() != 0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

void add_passivity(Report& rep, const PassivityReport& pr, const CheckOptions& opts, const char* key) {
  json j = json::parse(to_json(pr));
  j["verdict"] = verdict_name(pr, opts);
  rep.result[key] = j;
  rep.result[std::string(key) == "passivity" ? "passive" : "bounded_real"] = pr.verdict;
  rep.verdicts.push_back(std::string(key) + ": " + verdict_name(pr, opts));
  if (!pr.cond1.holds) {
    std::string where = pr.cond1.infinity_failed ? "at infinity" : "";
    if (pr.cond1.omega) where = "at omega = " + to_string(*pr.cond1.omega);
    if (pr.cond1.interior_point) where = "at s = " + complex_text(*pr.cond1.interior_point);
    rep.certificates.push_back("condition 1 fails " + where);
  }
  if (!pr.cond2.holds && pr.cond2.witness)
    rep.certificates.push_back("condition 2 fails: uncontrollable mode at lambda = " +
                               complex_text(*pr.cond2.witness));
  if (!pr.cond3.holds && pr.cond3.lambda)
    rep.certificates.push_back("condition 3 fails at lambda = " + complex_text(*pr.cond3.lambda));
  for (const auto& w : pr.warnings) rep.warnings.push_back(w);
}

void add_behavior_lines(Report& rep, const Behavior& b) {
  rep.certificates.push_back("P = " + to_string(b.P));
  rep.certificates.push_back("Q = " + to_string(b.Q));
}

void add_inertia(Report& rep, const Behavior& b) {
  try {
    InertiaBounds ib = inertia_bounds(b);
    rep.result["inertia_bounds"] = json::parse(to_json(ib));
    rep.result["capacitor_lower"] = ib.capacitor_lower;
    rep.result["inductor_lower"] = ib.inductor_lower;
    rep.certificates.push_back("inertia bounds: capacitors >= " + std::to_string(ib.capacitor_lower) +
                               ", inductors >= " + std::to_string(ib.inductor_lower));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNotReciprocal) throw;
    rep.result["inertia_bounds"] = nullptr;
    rep.warnings.push_back("inertia bounds skipped: behavior is not reciprocal");
  }
}

Report analyze(const Options& o, const std::string& text) {
  Report rep;
  const Circuit c = parse_netlist(text);
  const EliminationChain chain = eliminate_chain(c);
  const Behavior& b = chain.behavior;
  const CheckOptions opts{o.tol, !o.no_interior};

  rep.result["behavior"] = json::parse(to_json(b));
  add_passivity(rep, is_passive(b, opts), opts, "passivity");
  const bool rec = is_reciprocal(b);
  const bool lossless = is_lossless(b, opts);
  const bool reversible = is_reversible(b, opts);
  const bool relaxation = is_relaxation(b, opts);
  const bool rl_dual = is_rl_dual(b, opts);
  const Controllability ctl = is_controllable(b);
  rep.result["reciprocal"] = rec;
  rep.result["lossless"] = lossless;
  rep.result["reversible"] = reversible;
  rep.result["relaxation"] = relaxation;
  rep.result["rl_dual"] = rl_dual;
  rep.result["controllable"] = ctl.controllable;
  rep.result["controllability"] = json::parse(to_json(ctl));
  rep.result["elements"] = {{"inductors", c.inductor_count()},
                            {"capacitors", c.capacitor_count()},
                            {"ports", c.ports.size()},
                            {"total", c.elements.size()}};
  rep.verdicts.push_back("reciprocal: " + yes_no(rec));
  rep.verdicts.push_back("lossless: " + yes_no(lossless));
  rep.verdicts.push_back("reversible: " + yes_no(reversible));
  rep.verdicts.push_back("relaxation: " + yes_no(relaxation));
  rep.verdicts.push_back("rl-dual: " + yes_no(rl_dual));
  rep.verdicts.push_back("controllable: " + yes_no(ctl.controllable));
  add_behavior_lines(rep, b);
  add_inertia(rep, b);
  return rep;
}

Report eliminate(const Options&, const std::string& text) {
  Report rep;
  const EliminationChain chain = eliminate_chain(parse_netlist(text));
  rep.result["assembled"] = json::parse(to_json(chain.assembled));
  rep.result["internal"] = json::parse(to_json(chain.internal));
  rep.result["external"] = json::parse(to_json(chain.external));
  rep.result["behavior"] = json::parse(to_json(chain.behavior));
  const auto dims = [](const PolyMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
  };
  rep.verdicts.push_back("equations: " + std::to_string(chain.assembled.equations()) +
                         ", unknowns: " + std::to_string(chain.assembled.unknowns()));
  rep.certificates.push_back("internal variables eliminated (" + dims(chain.internal.R) +
                             "): " + to_string(chain.internal.R));
  rep.certificates.push_back("states eliminated (" + dims(chain.external.R) +
                             "): " + to_string(chain.external.R));
  add_behavior_lines(rep, chain.behavior);
  return rep;
}

Report check(const Options& o, const std::string& text) {
  Report rep;
  const Behavior b = load_behavior(text);
  const CheckOptions opts{o.tol, !o.no_interior};
  const bool any = o.passive || o.reciprocal || o.lossless || o.reversible || o.relaxation ||
                   o.rl_dual || o.bounded_real || o.controllable || o.stabilisable;
  auto flag = [&](const char* name, bool value) {
    rep.result[name] = value;
    std::string label(name);
    for (char& ch : label)
      if (ch == '_') ch = '-';
    rep.verdicts.push_back(label + ": " + yes_no(value));
  };
  if (o.passive || !any) add_passivity(rep, is_passive(b, opts), opts, "passivity");
  if (o.reciprocal) flag("reciprocal", is_reciprocal(b));
  if (o.lossless) flag("lossless", is_lossless(b, opts));
  if (o.reversible) flag("reversible", is_reversible(b, opts));
  if (o.relaxation) flag("relaxation", is_relaxation(b, opts));
  if (o.rl_dual) flag("rl_dual", is_rl_dual(b, opts));
  if (o.controllable) {
    const Controllability c = is_controllable(b);
    flag("controllable", c.controllable);
    rep.result["controllability"] = json::parse(to_json(c));
    for (const Root& r : c.uncontrollable_modes.roots)
      rep.certificates.push_back("uncontrollable mode " + complex_text(r.value));
  }
  if (o.stabilisable) flag("stabilisable", is_stabilisable(b, o.tol));
  if (o.bounded_real) {
    const Rational gamma = parse_rational(o.gamma);
    rep.result["gamma"] = to_string(gamma);
    add_passivity(rep, bounded_real_check(b.P, b.Q, gamma, opts), opts, "bounded_real_report");
  }
  return rep;
}

Report realize(const Options&, const std::string& text) {
  Report rep;
  const Behavior b = load_behavior(text);
  const IoPartition part = find_io_partition(b);
  const StateSpace ss = to_observable_iso(b, part);
  rep.result = json::parse(to_json(ss));
  rep.result["inputs"] = part.input_labels;
  rep.result["outputs"] = part.output_labels;
  rep.result["observable"] = is_observable(ss);
  rep.result["controllable"] = is_controllable(ss);
  rep.verdicts.push_back("states: " + std::to_string(ss.states()));
  std::string inputs;
  for (const auto& l : part.input_labels) inputs += (inputs.empty() ? "" : ", ") + l;
  rep.verdicts.push_back("inputs: " + inputs);
  rep.certificates.push_back("A = " + to_string(ss.A));
  rep.certificates.push_back("B = " + to_string(ss.B));
  rep.certificates.push_back("C = " + to_string(ss.C));
  rep.certificates.push_back("D = " + to_string(ss.D));
  return rep;
}

Report simulate_verb(const Options& o, const std::string& text, const std::string& signal_text) {
  Report rep;
  const StateSpace ss = load_state_space(text);
  const SimulationSpec spec = simulation_spec_from_json(signal_text, ss.ports(), ss.states());
  const SimulationResult r = simulate(ss, spec.x0, spec.input, spec.t0, spec.t1, spec.dt);
  const double extracted = -r.supplied;
  rep.result["extracted_energy"] = extracted;
  rep.result["supplied"] = r.supplied;
  rep.result["x_final"] = std::vector<double>(r.x_final.data(), r.x_final.data() + r.x_final.size());
  std::ostringstream line;
  line << std::setprecision(12) << "extracted energy: " << extracted;
  rep.verdicts.push_back(line.str());
  try {
    const StorageCertificate cert = lmi_feasible(ss);
    const double storage =
        0.5 * r.x_final.dot(cert.X * r.x_final) - 0.5 * spec.x0.dot(cert.X * spec.x0);
    const bool holds = storage <= r.supplied + o.tol * std::max(1.0, std::abs(r.supplied));
    rep.result["storage_change"] = storage;
    rep.result["dissipation_inequality"] = holds;
    std::ostringstream s;
    s << std::setprecision(12) << "storage change: " << storage << " (supplied " << r.supplied << ")";
    rep.certificates.push_back(s.str());
  } catch (const Error& e) {
    rep.result["storage_change"] = nullptr;
    rep.warnings.push_back(std::string("no storage certificate: ") + e.what());
  }
  return rep;
}

Report bezoutian_verb(const Options&, const std::string& text) {
  Report rep;
  const Behavior b = load_behavior(text);
  const Bezoutian bz = bezoutian(b);
  const Inertia in = inertia(bz.entries);
  rep.result = json::parse(to_json(bz));
  rep.verdicts.push_back("inertia: +" + std::to_string(in.pos) + " -" + std::to_string(in.neg) + " 0:" +
                         std::to_string(in.zero));
  rep.certificates.push_back("bezoutian = " + to_string(bz.entries));
  add_inertia(rep, b);
  return rep;
}

void emit(const Options& o, const Report& rep, const std::string& digest, double ms, std::ostream& out) {
  if (o.json) {
    json env = {{"tool", "passnet"},
                {"version", PASSNET_VERSION},
                {"input_digest", digest},
                {"verb", o.verb},
                {"result", rep.result},
                {"warnings", rep.warnings},
                {"timing_ms", ms}};
    out << env.dump(2) << '\n';
    return;
  }
  for (const auto& l : rep.verdicts) out << l << '\n';
  for (const auto& l : rep.certificates) out << l << '\n';
  for (const auto& l : rep.warnings) out << "warning: " << l << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Passivity analysis of linear behaviors and RLCTG circuits", "passnet"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Emit a JSON report envelope");
  app.add_option("--tol", o.tol, "Numeric tolerance for sampled checks");
  app.add_option("--gamma", o.gamma, "Gain bound for --bounded-real (rational)");
  app.add_flag("--no-interior-sampling", o.no_interior, "Decide condition 1 on the boundary only");
  app.add_option("--seed", o.seed, "Ignored; all defaults are deterministic");

  auto verb = [&](const char* name, const char* help, const char* what) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("input", o.input, what)->required();
    return sub;
  };
  verb("analyze", "Full property suite for a netlist", "Netlist file");
  verb("eliminate", "Print the elimination chain for a netlist", "Netlist file");
  CLI::App* chk = verb("check", "Run selected deciders on a behavior", "Behavior JSON file");
  chk->add_flag("--passive", o.passive, "Three-condition passivity test (default when no flag is given)");
  chk->add_flag("--reciprocal", o.reciprocal, "P Q^T symmetric");
  chk->add_flag("--lossless", o.lossless, "Lossless passive behavior");
  chk->add_flag("--reversible", o.reversible, "Lossless and reciprocal");
  chk->add_flag("--relaxation", o.relaxation, "Realizable with R, C and transformers");
  chk->add_flag("--rl-dual", o.rl_dual, "Realizable with R, L and transformers");
  chk->add_flag("--bounded-real", o.bounded_real, "Reads the behavior as P u = Q y (u in the current slot)");
  chk->add_flag("--controllable", o.controllable, "Behavioral controllability and uncontrollable modes");
  chk->add_flag("--stabilisable", o.stabilisable, "No uncontrollable modes in the closed right half plane");
  verb("realize", "Observable state-space realization of a behavior", "Behavior JSON file");
  CLI::App* sim = verb("simulate", "Extracted energy along a simulated trajectory", "State-space JSON file");
  sim->add_option("--signal", o.signal, "Signal specification JSON file")->required();
  verb("bezoutian", "Bezoutian matrix and its inertia", "Behavior JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  o.verb = app.get_subcommands().front()->get_name();

  try {
    const auto start = std::chrono::steady_clock::now();
    const std::string text = read_file(o.input);
    std::string digest_input = text;
    Report rep;
    if (o.verb == "analyze") rep = analyze(o, text);
    if (o.verb == "eliminate") rep = eliminate(o, text);
    if (o.verb == "check") rep = check(o, text);
    if (o.verb == "realize") rep = realize(o, text);
    if (o.verb == "bezoutian") rep = bezoutian_verb(o, text);
    if (o.verb == "simulate") {
      const std::string sig = read_file(o.signal);
      digest_input += sig;
      rep = simulate_verb(o, text, sig);
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(o, rep, fnv1a(digest_input), ms, out);
    return 0;
  } catch (const Error& e) {
    err << "passnet: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "passnet: internal failure: " << e.what() << '\n';
    return 2;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"passnet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace passnet::cli
