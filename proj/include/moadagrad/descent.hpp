#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "moadagrad/min_norm.hpp"
#include "moadagrad/problem.hpp"
#include "moadagrad/run_record.hpp"

namespace moadagrad {

inline constexpr double kDefaultMinStep = 0x1p-50;

struct DescentConfig {
  /// Armijo sufficient-decrease constant, in (0, 1).
  double beta = 0.1;
  double criticality_tol = 1e-6;
  std::size_t gradient_budget = 100000;
  /// Smallest trial step; backtracking below it is a stall.
  double min_step = kDefaultMinStep;
  double subproblem_tol = kDefaultSubproblemTol;
  bool record_iterates = true;
  /// Keep x^k (and its per-iterate vectors) only when k % thin == 0; omega and
  /// the step parameter are kept for every k. final_x holds the last iterate.
  std::size_t thin = 1;
  IterationObserver observer;
};

struct ArmijoResult {
  double step = 0.0;
  std::size_t objective_evals_used = 0;
  /// f(x - step * g_s), as seen by the accepted test.
  Eigen::VectorXd f_trial;
};

/// Largest t in {1, 1/2, 1/4, ...} with t >= min_step such that
///   f_j(x - t g_s) <= f_j(x) - beta t grad f_j(x)^T g_s  for all j.
/// Each tested t costs one objective evaluation. Throws StallError when no
/// admissible t remains.
ArmijoResult armijo_backtrack(MultiObjectiveProblem& problem, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& fx, const Eigen::VectorXd& g_s,
                              const Eigen::MatrixXd& grads, double beta,
                              double min_step = kDefaultMinStep);

/// Same, evaluating f(x) first (counted in objective_evals_used).
ArmijoResult armijo_backtrack(MultiObjectiveProblem& problem, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& g_s, const Eigen::MatrixXd& grads,
                              double beta, double min_step = kDefaultMinStep);

/// MO-Descent: the common descent direction with Armijo backtracking.
/// f(x^k) is evaluated once at the first non-critical iterate and then
/// carried over from the accepted trial.
RunRecord run_descent(MultiObjectiveProblem& problem, const Eigen::VectorXd& x0,
                      const DescentConfig& config = {});

}  // namespace moadagrad
