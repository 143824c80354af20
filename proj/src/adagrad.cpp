#include "moadagrad/adagrad.hpp"

#include <cmath>

#include "stopwatch.hpp"

namespace moadagrad {

IterateState initial_state(const Eigen::VectorXd& x0, double varsigma) {
  if (!(varsigma > 0.0 && varsigma < 1.0)) {
    throw InputError("MO-Adagrad: varsigma must lie in (0, 1)");
  }
  return {0, x0, std::sqrt(varsigma), 0.0};
}

IterateState adagrad_step(const IterateState& state, const Eigen::VectorXd& g_s) {
  if (!g_s.allFinite()) throw NumericError("MO-Adagrad: non-finite direction", 0);
  if (g_s.size() != state.x.size()) throw InputError("MO-Adagrad: direction has wrong size");
  const double sq = g_s.squaredNorm();
  IterateState next;
  next.k = state.k + 1;
  next.sum_sq = state.sum_sq + sq;
  next.w = std::sqrt(state.w * state.w + sq);
  next.x = sq > 0.0 ? Eigen::VectorXd(state.x - g_s / next.w) : state.x;
  return next;
}

RunRecord run_adagrad(MultiObjectiveProblem& problem, const Eigen::VectorXd& x0,
                      const AdagradConfig& config) {
  if (config.gradient_budget < 1) throw InputError("MO-Adagrad: budget must be >= 1");
  if (!(config.criticality_tol > 0.0)) throw InputError("MO-Adagrad: criticality_tol must be positive");
  if (x0.size() != problem.n()) throw InputError("MO-Adagrad: x0 has wrong dimension");
  if (config.thin < 1) throw InputError("MO-Adagrad: thin must be >= 1");

  RunRecord record;
  record.problem = problem.name();
  record.solver = "adagrad";
  record.n = problem.n();
  record.config = {{"varsigma", config.varsigma},
                   {"criticality_tol", config.criticality_tol},
                   {"gradient_budget", static_cast<double>(config.gradient_budget)},
                   {"subproblem_tol", config.subproblem_tol}};
  record.x0 = x0;

  IterateState state = initial_state(x0, config.varsigma);
  detail::Stopwatch clock;
  if (config.observer) clock.excluding([&] { config.observer(0, state.x); });

  try {
    while (true) {
      if (problem.counters().gradient_evals >= config.gradient_budget) {
        record.status = RunStatus::BudgetExhausted;
        break;
      }
      Eigen::MatrixXd G = problem.jacobian(state.x);
      SubproblemSolution sub = min_norm_element(G, config.subproblem_tol);
      record.final_omega = sub.omega;
      if (std::sqrt(sub.omega) <= config.criticality_tol) {
        record.status = RunStatus::Critical;
        break;
      }
      IterateState next = adagrad_step(state, sub.g_s);

      TrajectoryPoint point;
      point.k = state.k;
      point.omega = sub.omega;
      point.step_param = next.w;
      point.gradient_evals = problem.counters().gradient_evals;
      point.objective_evals = problem.counters().objective_evals;
      if (config.record_iterates && state.k % config.thin == 0) {
        point.x = state.x;
        point.directional = G * sub.g_s;
      }
      record.trajectory.push_back(std::move(point));

      state = std::move(next);
      if (!state.x.allFinite()) throw NumericError("MO-Adagrad: iterate overflowed", 0);
      if (config.observer) clock.excluding([&] { config.observer(state.k, state.x); });
    }
  } catch (const Error& e) {
    record.status = RunStatus::Failed;
    record.message = e.what();
  }

  record.wall_time_seconds = clock.seconds();
  record.final_x = state.x;
  record.counters = problem.counters();
  return record;
}

}  // namespace moadagrad
