// Serial reference vs OpenMP kernels: multi-task loss/gradient sums and the
// experiment grid.

#include <map>
#include <random>

#include <benchmark/benchmark.h>

#include "moadagrad/experiment.hpp"
#include "moadagrad/multitask.hpp"
#include "moadagrad/multitask_kernels.hpp"

using namespace moadagrad;

namespace {

const Dataset& dataset(std::size_t n) {
  static std::map<std::size_t, Dataset> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, generate_dataset(ExampleKind::QuadrantsCircle, n, 0)).first;
  }
  return it->second;
}

Eigen::VectorXd random_params() {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 0.5);
  Eigen::VectorXd p(parameter_count(ExampleKind::QuadrantsCircle));
  for (auto& v : p) v = normal(rng);
  return p;
}

template <auto Kernel>
void BM_Accumulate(benchmark::State& state) {
  const Dataset& data = dataset(static_cast<std::size_t>(state.range(0)));
  const Eigen::VectorXd params = random_params();
  for (auto _ : state) {
    auto sums = Kernel(data, data.train, params, true);
    benchmark::DoNotOptimize(sums.loss1);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(data.train.size()));
}

ExperimentConfig grid_config() {
  ExperimentConfig config;
  config.problems = expand_problem_names({"@paired"});
  config.seeds = {0, 1, 2};
  config.budget = 20000;
  return config;
}

void BM_GridSerial(benchmark::State& state) {
  const ExperimentConfig config = grid_config();
  for (auto _ : state) {
    std::size_t critical = 0;
    for (const Cell& cell : experiment_cells(config)) {
      critical += run_cell(cell, config).status == RunStatus::Critical;
    }
    benchmark::DoNotOptimize(critical);
  }
}

void BM_GridParallel(benchmark::State& state) {
  const ExperimentConfig config = grid_config();
  for (auto _ : state) {
    auto records = run_experiment(config);
    benchmark::DoNotOptimize(records.data());
  }
}

}  // namespace

BENCHMARK(BM_Accumulate<kernels::accumulate_serial>)
    ->Name("accumulate/serial")
    ->Arg(10000)
    ->Arg(100000)
    ->Arg(1000000)
    ->UseRealTime();
BENCHMARK(BM_Accumulate<kernels::accumulate_parallel>)
    ->Name("accumulate/parallel")
    ->Arg(10000)
    ->Arg(100000)
    ->Arg(1000000)
    ->UseRealTime();
BENCHMARK(BM_GridSerial)->Name("grid/serial")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GridParallel)->Name("grid/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
