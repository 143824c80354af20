#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "moadagrad/problem.hpp"

namespace moadagrad {

enum class RunStatus { Critical, BudgetExhausted, Failed };

std::string to_string(RunStatus status);
RunStatus parse_run_status(const std::string& text);

/// One accepted iteration k: quantities at x^k and the step taken from it.
struct TrajectoryPoint {
  std::size_t k = 0;
  double omega = 0.0;
  /// w_k for MO-Adagrad, alpha_k for MO-Descent.
  double step_param = 0.0;
  /// Counter values once iteration k is complete.
  std::size_t gradient_evals = 0;
  std::size_t objective_evals = 0;
  /// x^k; empty unless iterates are recorded.
  Eigen::VectorXd x;
  /// grad f_j(x^k)^T g_s for every j; empty unless iterates are recorded.
  Eigen::VectorXd directional;
  /// MO-Descent only: f(x^k) and the accepted trial value f(x^{k+1}).
  Eigen::VectorXd f_before;
  Eigen::VectorXd f_after;
};

/// Called with (k, x^k) at the start point and after every step.
using IterationObserver = std::function<void(std::size_t, const Eigen::VectorXd&)>;

/// Full account of one solver run.
struct RunRecord {
  std::string problem;
  std::string solver;
  std::uint64_t seed = 0;
  double noise = 0.0;
  int n = 0;
  /// Solver parameters as (name, value) pairs in a fixed order.
  std::vector<std::pair<std::string, double>> config;
  Eigen::VectorXd x0;
  std::vector<TrajectoryPoint> trajectory;
  Eigen::VectorXd final_x;
  double final_omega = 0.0;
  RunStatus status = RunStatus::Failed;
  std::string message;
  EvalCounters counters;
  double wall_time_seconds = 0.0;

  /// Value of a config entry; throws LookupError when absent.
  double config_value(const std::string& key) const;
};

}  // namespace moadagrad
