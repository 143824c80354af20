#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "moadagrad/min_norm.hpp"
#include "moadagrad/problem.hpp"
#include "moadagrad/run_record.hpp"

namespace moadagrad {

struct AdagradConfig {
  /// Initial squared weight, in (0, 1).
  double varsigma = 1e-2;
  /// Stop once |g_s| <= criticality_tol.
  double criticality_tol = 1e-6;
  std::size_t gradient_budget = 100000;
  double subproblem_tol = kDefaultSubproblemTol;
  bool record_iterates = true;
  /// Keep x^k (and its per-iterate vectors) only when k % thin == 0; omega and
  /// the step parameter are kept for every k. final_x holds the last iterate.
  std::size_t thin = 1;
  IterationObserver observer;
};

/// x^k with the Adagrad-Norm weight w_{k-1} and the accumulated sum of
/// squared direction norms; w = sqrt(varsigma + sum_sq).
struct IterateState {
  std::size_t k = 0;
  Eigen::VectorXd x;
  double w = 0.0;
  double sum_sq = 0.0;
};

/// State before the first step: w_{-1} = sqrt(varsigma).
IterateState initial_state(const Eigen::VectorXd& x0, double varsigma);

/// w' = sqrt(w^2 + |g_s|^2), x' = x - g_s / w'. No oracle calls.
IterateState adagrad_step(const IterateState& state, const Eigen::VectorXd& g_s);

/// MO-Adagrad. Never evaluates an objective value: the problem's
/// objective_evals counter is untouched by the run.
RunRecord run_adagrad(MultiObjectiveProblem& problem, const Eigen::VectorXd& x0,
                      const AdagradConfig& config = {});

}  // namespace moadagrad
