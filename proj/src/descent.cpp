#include "moadagrad/descent.hpp"

#include <cmath>
#include <cstdio>

#include "stopwatch.hpp"

namespace moadagrad {

ArmijoResult armijo_backtrack(MultiObjectiveProblem& problem, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& fx, const Eigen::VectorXd& g_s,
                              const Eigen::MatrixXd& grads, double beta, double min_step) {
  if (!(beta > 0.0 && beta < 1.0)) throw InputError("Armijo: beta must lie in (0, 1)");
  if (!(min_step > 0.0)) throw InputError("Armijo: min_step must be positive");
  if (fx.size() != problem.m() || grads.rows() != problem.m() || grads.cols() != problem.n()) {
    throw InputError("Armijo: objective values or gradients have wrong shape");
  }
  if (g_s.isZero(0.0)) throw InputError("Armijo: zero direction");

  const Eigen::VectorXd slope = grads * g_s;
  ArmijoResult result;
  for (double t = 1.0; t >= min_step; t *= 0.5) {
    Eigen::VectorXd trial = problem.evaluate(x - t * g_s);
    ++result.objective_evals_used;
    if (((trial - fx + beta * t * slope).array() <= 0.0).all()) {
      result.step = t;
      result.f_trial = std::move(trial);
      return result;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "Armijo: step fell below %g", min_step);
  throw StallError(buf);
}

ArmijoResult armijo_backtrack(MultiObjectiveProblem& problem, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& g_s, const Eigen::MatrixXd& grads,
                              double beta, double min_step) {
  Eigen::VectorXd fx = problem.evaluate(x);
  ArmijoResult result = armijo_backtrack(problem, x, fx, g_s, grads, beta, min_step);
  ++result.objective_evals_used;
  return result;
}

RunRecord run_descent(MultiObjectiveProblem& problem, const Eigen::VectorXd& x0,
                      const DescentConfig& config) {
  if (config.gradient_budget < 1) throw InputError("MO-Descent: budget must be >= 1");
  if (config.thin < 1) throw InputError("MO-Descent: thin must be >= 1");
  if (!(config.criticality_tol > 0.0)) throw InputError("MO-Descent: criticality_tol must be positive");
  if (!(config.beta > 0.0 && config.beta < 1.0)) throw InputError("MO-Descent: beta must lie in (0, 1)");
  if (x0.size() != problem.n()) throw InputError("MO-Descent: x0 has wrong dimension");

  RunRecord record;
  record.problem = problem.name();
  record.solver = "descent";
  record.n = problem.n();
  record.config = {{"beta", config.beta},
                   {"criticality_tol", config.criticality_tol},
                   {"gradient_budget", static_cast<double>(config.gradient_budget)},
                   {"min_step", config.min_step},
                   {"subproblem_tol", config.subproblem_tol}};
  record.x0 = x0;

  Eigen::VectorXd x = x0;
  Eigen::VectorXd fx;
  std::size_t k = 0;
  detail::Stopwatch clock;
  if (config.observer) clock.excluding([&] { config.observer(0, x); });

  try {
    while (true) {
      if (problem.counters().gradient_evals >= config.gradient_budget) {
        record.status = RunStatus::BudgetExhausted;
        break;
      }
      Eigen::MatrixXd G = problem.jacobian(x);
      SubproblemSolution sub = min_norm_element(G, config.subproblem_tol);
      record.final_omega = sub.omega;
      if (std::sqrt(sub.omega) <= config.criticality_tol) {
        record.status = RunStatus::Critical;
        break;
      }
      // A noisy accepted trial is biased low; draw f(x^k) afresh instead.
      if (fx.size() == 0 || problem.noisy()) fx = problem.evaluate(x);
      ArmijoResult arm = armijo_backtrack(problem, x, fx, sub.g_s, G, config.beta, config.min_step);

      TrajectoryPoint point;
      point.k = k;
      point.omega = sub.omega;
      point.step_param = arm.step;
      point.gradient_evals = problem.counters().gradient_evals;
      point.objective_evals = problem.counters().objective_evals;
      if (config.record_iterates && k % config.thin == 0) {
        point.x = x;
        point.directional = G * sub.g_s;
        point.f_before = fx;
        point.f_after = arm.f_trial;
      }
      record.trajectory.push_back(std::move(point));

      x -= arm.step * sub.g_s;
      fx = std::move(arm.f_trial);
      ++k;
      if (config.observer) clock.excluding([&] { config.observer(k, x); });
    }
  } catch (const Error& e) {
    record.status = RunStatus::Failed;
    record.message = e.what();
  }

  record.wall_time_seconds = clock.seconds();
  record.final_x = x;
  record.counters = problem.counters();
  return record;
}

}  // namespace moadagrad
