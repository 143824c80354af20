#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "moadagrad/min_norm.hpp"
#include "moadagrad/multitask.hpp"
#include "moadagrad/run_record.hpp"

namespace moadagrad {

/// Solver names accepted everywhere: "adagrad" and "descent".
std::vector<std::string> solver_names();
void check_solver_name(const std::string& solver);

struct ProfileSettings {
  double tau_max = 3.0;
  int points = 61;
};

/// Declarative experiment grid, read from JSON. Problem lists may use the
/// group aliases "@benchmarks", "@paired", "@regularized", "@noise_rows"
/// and "@all".
struct ExperimentConfig {
  std::vector<std::string> problems;
  std::vector<std::string> solvers{"adagrad", "descent"};
  std::vector<std::uint64_t> seeds{0};
  std::vector<double> noise{0.0};
  NoiseModel noise_model = NoiseModel::PerObjective;
  std::size_t budget = 100000;
  double criticality_tol = 1e-6;
  double varsigma = 1e-2;
  double beta = 0.1;
  double subproblem_tol = kDefaultSubproblemTol;
  ProfileSettings profile;
  bool write_trajectories = false;
};

/// Throws ConfigError naming the offending field (or line and column for
/// malformed JSON).
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

/// Expands group aliases and removes duplicates, keeping first occurrence.
std::vector<std::string> expand_problem_names(const std::vector<std::string>& names);

struct Cell {
  std::string problem;
  std::string solver;
  std::uint64_t seed = 0;
  double noise = 0.0;
};

/// problems x solvers x noise x seeds, in that nesting order.
std::vector<Cell> experiment_cells(const ExperimentConfig& config);

/// Seed of the noise stream for a run started from `seed`.
std::uint64_t noise_seed(std::uint64_t seed);

/// Builds the cell's problem (noisy when noise > 0), picks its start and runs
/// the solver. Solver failures are recorded in the returned status.
RunRecord run_cell(const Cell& cell, const ExperimentConfig& config, bool record_iterates = false);

/// Every cell, in parallel. Results are in experiment_cells order.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

/// MOADAGRAD_OUT_DIR when set, else `requested`. Throws ConfigError if both
/// are empty.
std::string resolve_output_dir(const std::string& requested);

struct MultitaskOptions {
  ExampleKind kind = ExampleKind::QuadrantsCircle;
  std::string solver = "adagrad";
  std::size_t iterations = 1000;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  Kernel kernel = Kernel::Parallel;
  double varsigma = 1e-2;
  double beta = 0.1;
  double criticality_tol = 1e-6;
};

struct MultitaskResult {
  RunRecord record;
  /// Test accuracy at x^0, x^1, ...
  std::vector<TaskAccuracy> test_accuracy;
  /// Best-so-far minimum test accuracy after each iterate.
  std::vector<double> best_min_accuracy;
  double best_accuracy = 0.0;
  /// First iterate attaining best_accuracy, and the counters when it was reached.
  std::size_t best_iteration = 0;
  std::size_t gradient_evals_at_best = 0;
  std::size_t objective_evals_at_best = 0;
  TaskLosses final_train_loss;
};

/// Trains on the seeded dataset with one gradient evaluation per iteration.
/// Accuracy tracking is excluded from the reported wall time.
MultitaskResult run_multitask(const MultitaskOptions& options);

}  // namespace moadagrad
