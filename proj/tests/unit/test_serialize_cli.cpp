// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "catalog.hpp"
#include "cli.hpp"
#include "passnet/serialize.hpp"

namespace passnet {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const RatPoly s = RatPoly::s();

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("passnet_test_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Serialize, BehaviorRoundTrip) {
  Behavior b = behavior_from_pq(PolyMatrix{{s * s + Rational(1, 3), 1}, {0, s}}, PolyMatrix{{1, 0}, {s, 2}},
                                {"a", "b"});
  Behavior back = behavior_from_json(to_json(b));
  EXPECT_EQ(back.P, b.P);
  EXPECT_EQ(back.Q, b.Q);
  EXPECT_EQ(back.ports, b.ports);
}

TEST(Serialize, BehaviorAcceptsNumbers) {
  Behavior b = behavior_from_json(R"({"P": [[2]], "Q": [["1 + s"]]})");
  EXPECT_EQ(b.P, PolyMatrix{{2}});
  EXPECT_EQ(b.ports, std::vector<std::string>{"p1"});
  EXPECT_THROW(behavior_from_json(R"({"P": [[2]]})"), Error);
  EXPECT_THROW(behavior_from_json("{not json"), Error);
  EXPECT_THROW(behavior_from_json(R"({"P": [[true]], "Q": [[1]]})"), Error);
}

TEST(Serialize, StateSpaceRoundTrip) {
  StateSpace ss = make_state_space(qmatrix_from_rows({{-1, Rational(1, 2)}, {0, -3}}),
                                   qmatrix_from_rows({{1}, {2}}), qmatrix_from_rows({{1, 0}}),
                                   qmatrix_from_rows({{Rational(5, 7)}}));
  ss.sigma_e = qmatrix_from_rows({{1}});
  StateSpace back = state_space_from_json(to_json(ss));
  EXPECT_EQ(back.A, ss.A);
  EXPECT_EQ(back.B, ss.B);
  EXPECT_EQ(back.C, ss.C);
  EXPECT_EQ(back.D, ss.D);
  ASSERT_TRUE(back.sigma_e.has_value());
  EXPECT_FALSE(back.sigma_i.has_value());
}

TEST(Serialize, StaticStateSpace) {
  StateSpace back = state_space_from_json(R"({"A": [], "B": [], "C": [[]], "D": [["5"]]})");
  EXPECT_EQ(back.states(), 0);
  EXPECT_EQ(back.ports(), 1);
}

TEST(Serialize, ReportsAreValidJson) {
  Behavior b = testing::toy_system(3);
  json r = json::parse(to_json(is_passive(b)));
  EXPECT_FALSE(r["passive"].get<bool>());
  EXPECT_DOUBLE_EQ(r["condition2"]["witness"]["re"].get<double>(), 1.0);
  json bz = json::parse(to_json(bezoutian(behavior_from_pq({{2}}, {{s + 1}}))));
  EXPECT_EQ(bz["entries"][0][0], "2");
  EXPECT_EQ(bz["inertia"]["pos"], 1);
}

TEST(Serialize, SimulationSpec) {
  SimulationSpec spec = simulation_spec_from_json(
      R"({"signal": {"kind": "piecewise_constant", "times": [0, 1], "values": [[1], [2]]}, "t1": 2})", 1, 0);
  EXPECT_EQ(spec.input.kind, Signal::Kind::kPiecewiseConstant);
  EXPECT_EQ(spec.t1, 2.0);
  EXPECT_THROW(simulation_spec_from_json(R"({"signal": {"kind": "noise"}})", 1, 0), Error);
  EXPECT_THROW(simulation_spec_from_json(R"({"signal": {"kind": "constant", "value": [1, 2]}})", 1, 0), Error);
}

TEST(Cli, AnalyzeRcJson) {
  TempDir dir;
  const std::string net = dir.write("rc.net", testing::kRcNetlist);
  RunResult r = run({"analyze", net, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["tool"], "passnet");
  EXPECT_EQ(j["verb"], "analyze");
  EXPECT_TRUE(j["result"]["passive"].get<bool>());
  EXPECT_TRUE(j["result"]["reciprocal"].get<bool>());
  EXPECT_TRUE(j["result"]["relaxation"].get<bool>());
  EXPECT_EQ(j["result"]["capacitor_lower"], 1);
  EXPECT_EQ(j["input_digest"].get<std::string>().rfind("fnv1a64:", 0), 0u);
}

TEST(Cli, DeterministicApartFromTiming) {
  TempDir dir;
  const std::string net = dir.write("d.net", testing::kDarlingtonNetlist);
  json a = json::parse(run({"--json", "analyze", net}).out);
  json b = json::parse(run({"analyze", net, "--json"}).out);
  a.erase("timing_ms");
  b.erase("timing_ms");
  EXPECT_EQ(a, b);
}

TEST(Cli, EliminateDarlingtonPrintsChain) {
  TempDir dir;
  RunResult r = run({"eliminate", dir.write("d.net", testing::kDarlingtonNetlist)});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("equations: 15, unknowns: 16"), std::string::npos);
  EXPECT_NE(r.out.find("(5x6)"), std::string::npos);
  EXPECT_NE(r.out.find("(1x2)"), std::string::npos);
}

TEST(Cli, CheckSystemThreeReportsWitness) {
  TempDir dir;
  const std::string f = dir.write("sys3.json", R"({"P": [["-1 + s"]], "Q": [["-1 + s"]]})");
  RunResult r = run({"check", "--passive", f, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_FALSE(j["result"]["passive"].get<bool>());
  EXPECT_DOUBLE_EQ(j["result"]["passivity"]["condition2"]["witness"]["re"].get<double>(), 1.0);
  RunResult human = run({"check", f});
  EXPECT_NE(human.out.find("not-passive"), std::string::npos);
  // Verdicts print before certificates, warnings last.
  EXPECT_LT(human.out.find("passivity:"), human.out.find("condition 2"));
  EXPECT_LT(human.out.find("condition 2"), human.out.find("warning:"));
}

TEST(Cli, BoundaryPassVerdict) {
  TempDir dir;
  const std::string f = dir.write("rc.json", R"({"P": [["2"]], "Q": [["1 + s"]]})");
  json j = json::parse(run({"check", f, "--no-interior-sampling", "--json"}).out);
  EXPECT_EQ(j["result"]["passivity"]["verdict"], "boundary-pass");
}

TEST(Cli, BoundedRealAndOtherDeciders) {
  TempDir dir;
  const std::string f = dir.write("g.json", R"({"P": [["2"]], "Q": [["1"]]})");
  json lo = json::parse(run({"check", "--bounded-real", "--gamma", "1", f, "--json"}).out);
  json hi = json::parse(run({"check", "--bounded-real", "--gamma", "3", f, "--json"}).out);
  EXPECT_FALSE(lo["result"]["bounded_real"].get<bool>());
  EXPECT_TRUE(hi["result"]["bounded_real"].get<bool>());
  json all = json::parse(run({"check", "--reciprocal", "--lossless", "--reversible", "--relaxation", "--rl-dual",
                              "--controllable", "--stabilisable", f, "--json"})
                             .out);
  EXPECT_TRUE(all["result"]["reciprocal"].get<bool>());
  EXPECT_FALSE(all["result"]["lossless"].get<bool>());
  EXPECT_TRUE(all["result"]["controllable"].get<bool>());
}

TEST(Cli, RealizeOutputFeedsSimulate) {
  TempDir dir;
  const std::string beh = dir.write("rc.json", R"({"P": [["2"]], "Q": [["1 + s"]], "ports": ["p"]})");
  RunResult r = run({"realize", beh, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string iso = dir.write("iso.json", r.out);
  const std::string sig =
      dir.write("sig.json", R"({"signal": {"kind": "constant", "value": [1.0]}, "t1": 2.0, "dt": 0.001})");
  RunResult sim = run({"simulate", iso, "--signal", sig, "--json"});
  ASSERT_EQ(sim.code, 0) << sim.err;
  json j = json::parse(sim.out);
  EXPECT_TRUE(j["result"]["dissipation_inequality"].get<bool>());
  EXPECT_LT(j["result"]["extracted_energy"].get<double>(), 0.0);
}

TEST(Cli, EnvelopeFromEliminateFeedsCheck) {
  TempDir dir;
  RunResult e = run({"eliminate", dir.write("rc.net", testing::kRcNetlist), "--json"});
  ASSERT_EQ(e.code, 0);
  RunResult c = run({"bezoutian", dir.write("env.json", e.out), "--json"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(json::parse(c.out)["result"]["entries"][0][0], "2");
}

TEST(Cli, ExitCodes) {
  TempDir dir;
  EXPECT_EQ(run({"analyze", (fs::temp_directory_path() / "passnet_missing.net").string()}).code, 1);
  RunResult bad = run({"analyze", dir.write("bad.net", "PORT p a b\nR r a b zero\n")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"bezoutian", dir.write("g.json", R"({"P": [["0", "-1"], ["1", "0"]], "Q": [["1", "0"], ["0", "1"]]})")})
                .code,
            1);
}

}  // namespace
}  // namespace passnet
