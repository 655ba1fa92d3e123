// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "passnet/circuits.hpp"
#include "passnet/dissipativity.hpp"
#include "passnet/statespace.hpp"

namespace {

using namespace passnet;

const char* kDarlington =
    "PORT p P N\n"
    "L a P Z 2\n"
    "L b P X 2/5\n"
    "L c X N 3/5\n"
    "C d X N 25/3\n"
    "R e Y N 1/4\n"
    "T tf 1 1 Z X X Y 4\n";

void BM_DarlingtonDrivingPoint(benchmark::State& state) {
  const Circuit c = parse_netlist(kDarlington);
  for (auto _ : state) benchmark::DoNotOptimize(driving_point_behavior(c));
}
BENCHMARK(BM_DarlingtonDrivingPoint);

void BM_LeftSyzygy(benchmark::State& state) {
  const AssembledEquations eq = assemble_equations(parse_netlist(kDarlington));
  for (auto _ : state) benchmark::DoNotOptimize(left_syzygy_basis(eq.R2));
}
BENCHMARK(BM_LeftSyzygy);

void BM_IsPassive(benchmark::State& state) {
  const Behavior b = driving_point_behavior(parse_netlist(kDarlington));
  for (auto _ : state) benchmark::DoNotOptimize(is_passive(b));
}
BENCHMARK(BM_IsPassive);

void BM_SolveAre(benchmark::State& state) {
  const StateSpace ss = make_state_space(qmatrix_from_rows({{-1, 1}, {0, -2}}), qmatrix_from_rows({{1}, {1}}),
                                         qmatrix_from_rows({{1, 0}}), qmatrix_from_rows({{1}}));
  for (auto _ : state) benchmark::DoNotOptimize(solve_are(ss));
}
BENCHMARK(BM_SolveAre);

}  // namespace

BENCHMARK_MAIN();
