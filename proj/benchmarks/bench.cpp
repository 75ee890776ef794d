#include <benchmark/benchmark.h>

#include "sdgfdm/harness.hpp"
#include "sdgfdm/solver.hpp"
#include "sdgfdm/stencil.hpp"

using namespace sdgfdm;

namespace {

ExperimentConfig case1(int order) {
  ExperimentConfig c;
  c.order = order;
  return resolve(c);
}

void BM_Cloud(benchmark::State& state) {
  const ExperimentConfig c = case1(2);
  const Layout layout = example_layout(c);
  const int nx = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_cloud(layout, nx));
}
BENCHMARK(BM_Cloud)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

// args: order, nx
void BM_Stencils(benchmark::State& state) {
  const ExperimentConfig c = case1(static_cast<int>(state.range(0)));
  const int nx = static_cast<int>(state.range(1));
  const NodeSet cloud = generate_cloud(example_layout(c), nx);
  for (auto _ : state) benchmark::DoNotOptimize(build_stencils(cloud, c.order, c.m));
  state.counters["nodes"] = static_cast<double>(cloud.size());
}
BENCHMARK(BM_Stencils)->Args({2, 32})->Args({4, 32})->Args({6, 32})->Unit(benchmark::kMillisecond);

void BM_Discretize(benchmark::State& state) {
  const ExperimentConfig c = case1(2);
  const int nx = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(discretize(c, nx));
}
BENCHMARK(BM_Discretize)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const ExperimentConfig c = case1(2);
  const Discretization d = discretize(c, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_linear(d.system.matrix, d.system.rhs));
  state.counters["unknowns"] = static_cast<double>(d.system.rhs.size());
}
BENCHMARK(BM_Solve)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

// The packaged benchmark_main archive carries LTO bytecode from another compiler build.
BENCHMARK_MAIN();
