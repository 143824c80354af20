#include "moadagrad/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <tuple>

namespace moadagrad {

double budget_cost(const RunRecord& record, int n) {
  if (n < 1) throw InputError("budget_cost: dimension must be positive");
  return static_cast<double>(record.counters.gradient_evals) +
         static_cast<double>(record.counters.objective_evals) / n;
}

std::vector<double> make_tau_grid(double tau_max, int points) {
  if (points < 2 || !(tau_max > 0.0)) throw InputError("tau grid needs tau_max > 0 and >= 2 points");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = tau_max * i / (points - 1);
  return grid;
}

ProfileTable performance_profile(const std::vector<CostEntry>& entries,
                                 const std::vector<double>& tau_grid) {
  if (entries.empty()) throw InputError("performance_profile: empty cost table");
  if (tau_grid.empty()) throw InputError("performance_profile: empty tau grid");

  std::set<std::string> instance_set, solver_set;
  for (const auto& e : entries) {
    instance_set.insert(e.instance);
    solver_set.insert(e.solver);
  }
  ProfileTable t;
  t.instances.assign(instance_set.begin(), instance_set.end());
  t.solvers.assign(solver_set.begin(), solver_set.end());
  t.tau = tau_grid;
  const std::size_t P = t.instances.size(), S = t.solvers.size();

  std::map<std::string, std::size_t> pi, si;
  for (std::size_t i = 0; i < P; ++i) pi[t.instances[i]] = i;
  for (std::size_t s = 0; s < S; ++s) si[t.solvers[s]] = s;
  t.cost.assign(P, std::vector<std::optional<double>>(S));
  for (const auto& e : entries) {
    if (e.cost && (!std::isfinite(*e.cost) || *e.cost < 0.0)) {
      throw InputError("performance_profile: costs must be finite and nonnegative");
    }
    t.cost[pi[e.instance]][si[e.solver]] = e.cost;
  }

  t.ratio.assign(P, std::vector<std::optional<double>>(S));
  for (std::size_t p = 0; p < P; ++p) {
    std::optional<double> best;
    for (std::size_t s = 0; s < S; ++s) {
      if (t.cost[p][s] && (!best || *t.cost[p][s] < *best)) best = t.cost[p][s];
    }
    if (!best) continue;
    for (std::size_t s = 0; s < S; ++s) {
      if (!t.cost[p][s]) continue;
      double c = *t.cost[p][s];
      t.ratio[p][s] = c == *best ? 1.0 : (*best > 0.0 ? c / *best : INFINITY);
    }
  }

  t.curve.assign(S, std::vector<double>(tau_grid.size(), 0.0));
  t.solve_fraction.assign(S, 0.0);
  for (std::size_t s = 0; s < S; ++s) {
    std::size_t solved = 0;
    for (std::size_t p = 0; p < P; ++p) solved += t.ratio[p][s].has_value();
    t.solve_fraction[s] = static_cast<double>(solved) / P;
    for (std::size_t k = 0; k < tau_grid.size(); ++k) {
      std::size_t within = 0;
      for (std::size_t p = 0; p < P; ++p) {
        if (t.ratio[p][s] && std::log10(*t.ratio[p][s]) <= tau_grid[k]) ++within;
      }
      t.curve[s][k] = static_cast<double>(within) / P;
    }
  }
  return t;
}

std::string instance_key(const RunRecord& record) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "|%g|", record.noise);
  return record.problem + buf + std::to_string(record.seed);
}

std::vector<CostEntry> cost_entries(const std::vector<RunRecord>& records) {
  std::vector<CostEntry> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    CostEntry e{instance_key(r), r.solver, std::nullopt};
    if (r.status == RunStatus::Critical) e.cost = budget_cost(r);
    out.push_back(std::move(e));
  }
  return out;
}

double rate_theta(double varsigma, double lipschitz, double gamma0) {
  if (!(lipschitz > 0.0)) throw InputError("rate_check: L_max must be positive");
  if (!(varsigma > 0.0 && varsigma < 1.0)) throw InputError("rate_check: varsigma must lie in (0, 1)");
  const double middle = 0.5 * varsigma * std::exp(2.0 * gamma0 / lipschitz);
  const double last = 2048.0 * std::pow(lipschitz, 4) / varsigma;
  return std::max({varsigma, middle, last});
}

RateReport rate_check(const std::vector<double>& omegas, double lipschitz, double gamma0,
                      double varsigma) {
  RateReport report;
  report.theta = rate_theta(varsigma, lipschitz, gamma0);
  double sum = 0.0;
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    sum += omegas[k];
    const double avg = sum / static_cast<double>(k + 1);
    const double bound = report.theta / static_cast<double>(k + 1);
    report.running_average.push_back(avg);
    report.bound.push_back(bound);
    if (!(avg <= bound) && report.holds) {
      report.holds = false;
      report.first_violation = k;
    }
  }
  return report;
}

RateReport rate_check(const RunRecord& record, double lipschitz, double gamma0, double varsigma) {
  std::vector<double> omegas;
  omegas.reserve(record.trajectory.size());
  for (const auto& p : record.trajectory) omegas.push_back(p.omega);
  return rate_check(omegas, lipschitz, gamma0, varsigma);
}

std::vector<NoiseDistanceRow> noise_distance_table(const std::vector<RunRecord>& records) {
  using Key = std::tuple<std::string, std::string, std::uint64_t>;
  std::map<Key, const RunRecord*> reference;
  for (const auto& r : records) {
    if (r.noise == 0.0) reference[{r.problem, r.solver, r.seed}] = &r;
  }
  std::map<std::tuple<std::string, std::string, double>, NoiseDistanceRow> rows;
  for (const auto& r : records) {
    auto it = reference.find({r.problem, r.solver, r.seed});
    if (it == reference.end()) {
      throw OrchestrationError("noise distance: no noiseless reference run for " + r.problem +
                               " / " + r.solver + " / seed " + std::to_string(r.seed));
    }
    auto& row = rows[{r.problem, r.solver, r.noise}];
    row.problem = r.problem;
    row.solver = r.solver;
    row.noise = r.noise;
    row.seeds.push_back(r.seed);
    row.distances.push_back((r.final_x - it->second->final_x).norm());
  }
  std::vector<NoiseDistanceRow> out;
  for (auto& [key, row] : rows) {
    double sum = 0.0;
    for (double d : row.distances) sum += d;
    row.mean_distance = sum / static_cast<double>(row.distances.size());
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<SeedAggregate> aggregate_over_seeds(const std::vector<RunRecord>& records) {
  std::map<std::tuple<std::string, std::string, double>, std::vector<const RunRecord*>> groups;
  for (const auto& r : records) groups[{r.problem, r.solver, r.noise}].push_back(&r);
  std::vector<SeedAggregate> out;
  for (const auto& [key, group] : groups) {
    SeedAggregate a;
    std::tie(a.problem, a.solver, a.noise) = key;
    a.runs = group.size();
    double cost_sum = 0.0;
    for (const RunRecord* r : group) {
      a.mean_gradient_evals += static_cast<double>(r->counters.gradient_evals);
      a.mean_objective_evals += static_cast<double>(r->counters.objective_evals);
      if (r->status == RunStatus::Critical) {
        ++a.solved;
        cost_sum += budget_cost(*r);
      }
    }
    a.mean_gradient_evals /= static_cast<double>(a.runs);
    a.mean_objective_evals /= static_cast<double>(a.runs);
    if (a.solved > 0) a.mean_cost = cost_sum / static_cast<double>(a.solved);
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace moadagrad
