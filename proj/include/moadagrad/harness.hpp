#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moadagrad/run_record.hpp"

namespace moadagrad {

/// gradient_evals + objective_evals / n.
double budget_cost(const RunRecord& record, int n);
inline double budget_cost(const RunRecord& record) { return budget_cost(record, record.n); }

/// Cost of one solver on one instance; empty when the run did not reach a
/// critical point.
struct CostEntry {
  std::string instance;
  std::string solver;
  std::optional<double> cost;
};

/// Dolan-More performance profile on a log10 ratio scale.
struct ProfileTable {
  std::vector<std::string> instances;
  std::vector<std::string> solvers;
  /// [instance][solver]; empty entries are failures.
  std::vector<std::vector<std::optional<double>>> cost;
  /// cost / best cost on the instance; empty for failures.
  std::vector<std::vector<std::optional<double>>> ratio;
  std::vector<double> tau;
  /// [solver][tau]: fraction of instances with log10(ratio) <= tau.
  std::vector<std::vector<double>> curve;
  std::vector<double> solve_fraction;
};

/// Instances or solvers absent from `entries` for some pair count as failures.
ProfileTable performance_profile(const std::vector<CostEntry>& entries,
                                 const std::vector<double>& tau_grid);

/// `points` evenly spaced values on [0, tau_max].
std::vector<double> make_tau_grid(double tau_max, int points);

/// Profile instance key "<problem>|<noise>|<seed>".
std::string instance_key(const RunRecord& record);

/// One entry per record; only Critical runs carry a cost.
std::vector<CostEntry> cost_entries(const std::vector<RunRecord>& records);

struct RateReport {
  double theta = 0.0;
  /// Running average of omega over iterations 0..k.
  std::vector<double> running_average;
  /// theta / (k + 1).
  std::vector<double> bound;
  bool holds = true;
  std::optional<std::size_t> first_violation;
};

/// theta = max{varsigma, (varsigma/2) exp(2 Gamma0 / L), 2048 L^4 / varsigma}.
double rate_theta(double varsigma, double lipschitz, double gamma0);

RateReport rate_check(const std::vector<double>& omegas, double lipschitz, double gamma0,
                      double varsigma);
RateReport rate_check(const RunRecord& record, double lipschitz, double gamma0, double varsigma);

struct NoiseDistanceRow {
  std::string problem;
  std::string solver;
  double noise = 0.0;
  std::vector<std::uint64_t> seeds;
  /// |x_final(noise) - x_final(0)| per seed.
  std::vector<double> distances;
  double mean_distance = 0.0;
};

/// Groups records by (problem, solver, noise) and measures each final point
/// against the noiseless run with the same problem, solver and seed. Rows are
/// ordered by problem, solver, then noise. Throws OrchestrationError when a
/// reference run is missing.
std::vector<NoiseDistanceRow> noise_distance_table(const std::vector<RunRecord>& records);

/// Per (problem, solver, noise) summary over seeds.
struct SeedAggregate {
  std::string problem;
  std::string solver;
  double noise = 0.0;
  std::size_t runs = 0;
  std::size_t solved = 0;
  /// Mean cost over solved runs; empty when none solved.
  std::optional<double> mean_cost;
  double mean_gradient_evals = 0.0;
  double mean_objective_evals = 0.0;
};

std::vector<SeedAggregate> aggregate_over_seeds(const std::vector<RunRecord>& records);

}  // namespace moadagrad
