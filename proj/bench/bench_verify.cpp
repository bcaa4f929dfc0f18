// Serial reference loops against the OpenMP kernels.
#include <benchmark/benchmark.h>

#include "foliage/parse.hpp"
#include "foliage/scenario.hpp"

namespace {

using namespace foliage;

Scenario rotation_grid(int per_axis) {
  const std::string k = std::to_string(per_axis);
  return parse_scenario(R"(dimension: 2
box: [[-2, 2], [-2, 2]]
generators: ["x*dx", "x*dy", "y*dx", "y*dy"]
field_x: "x*dy - y*dx"
degree_bound: 1
samples:
  grid: {counts: [)" + k + ", " + k + R"(], lo: [-1, -1], hi: [1, 1]}
)", "bench.yaml");
}

Scenario quadratic_line(int points) {
  std::string list;
  for (int i = 0; i < points; ++i) {
    list += (i ? ", [" : "[") + std::to_string(0.05 + 0.8 * i / std::max(points - 1, 1)) + "]";
  }
  return parse_scenario(R"(dimension: 1
box: [[-0.9, 0.9]]
generators: ["dx", "x*dx"]
field_x: "x^2*dx"
degree_bound: 1
samples: [)" + list + "]\n", "bench.yaml");
}

void verify(benchmark::State& state, Scenario (*make)(int), Execution exec) {
  const Scenario s = make(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto r = verify_scenario(s, exec);
    benchmark::DoNotOptimize(r.passed);
  }
  state.counters["points"] = static_cast<double>(s.samples.size());
}

void involutivity(benchmark::State& state, Execution exec) {
  // all monomial fields of degree <= 1 in three variables
  std::vector<VectorField> gens;
  const VariableNames names(3);
  for (const char* c : {"1", "x", "y", "z"}) {
    for (const char* d : {"dx", "dy", "dz"}) {
      gens.push_back(parse_vector_field(std::string(c) + "*" + d, names));
    }
  }
  const GeneratorSet g(std::move(gens));
  for (auto _ : state) {
    auto t = involutivity_check(g, static_cast<int>(state.range(0)), exec);
    benchmark::DoNotOptimize(t.all_certified());
  }
}

}  // namespace

BENCHMARK_CAPTURE(verify, rotation_serial, rotation_grid, Execution::serial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(verify, rotation_parallel, rotation_grid, Execution::parallel)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(verify, quadratic_serial, quadratic_line, Execution::serial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(verify, quadratic_parallel, quadratic_line, Execution::parallel)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(involutivity, serial, Execution::serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(involutivity, parallel, Execution::parallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
